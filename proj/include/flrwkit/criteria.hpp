#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "flrwkit/scale_factor.hpp"

namespace flrwkit {

/// Curvature class K and spatial dimension d of a warped-product FLRW metric
/// -dt^2 + a(t)^2 h_K on (t_inf, t_sup) x S_K^d.
struct SpacetimeSpec {
  int K = 0;  // +1 spherical, 0 flat, -1 hyperbolic
  int d = 3;
  ScaleFactor sf;

  /// Throws Error{domain} unless K is in {-1, 0, 1} and d >= 1.
  void validate() const;
};

std::string_view curvature_name(int K);

enum class HypothesisStatus { holds, fails, sampled_only, inconclusive };
std::string_view to_string(HypothesisStatus s);

struct Hypothesis {
  std::string name;
  HypothesisStatus status = HypothesisStatus::inconclusive;
  std::string evidence;
};

enum class Conclusion { applies, does_not_apply, inconclusive };
std::string_view to_string(Conclusion c);

struct Verdict {
  std::string id;
  Conclusion conclusion = Conclusion::inconclusive;
  std::string text;  // statement asserted when the verdict applies
  std::vector<Hypothesis> hypotheses;
  std::string note;
};

struct CriterionReport {
  SpacetimeSpec spec;
  std::string anchor;
  std::vector<Verdict> verdicts;
  std::string table_row;

  /// Throws Error{unknown_entry} for an id that is not in the report.
  const Verdict& verdict(std::string_view id) const;
};

struct CriteriaOptions {
  Thresholds thresholds;
  double milne_tol = 1e-3;  // band around a'(0) = 1
  std::size_t audit_points = 1000;
  double audit_upper = 1e6;
};

/// Statement ids in report order.
const std::vector<std::string>& statement_ids();

Verdict future_c0(const SpacetimeSpec& spec, const CriteriaOptions& opt = {});
Verdict past_c01(const SpacetimeSpec& spec, const CriteriaOptions& opt = {});
Verdict past_c0(const SpacetimeSpec& spec, const CriteriaOptions& opt = {});
Verdict ling_past_eternal(const SpacetimeSpec& spec, const CriteriaOptions& opt = {});
Verdict milne_like(const SpacetimeSpec& spec, const CriteriaOptions& opt = {});
Verdict symmetric_class_obstruction(const SpacetimeSpec& spec, const CriteriaOptions& opt = {});

/// All verdicts; for d = 1 the past C0-level verdicts are replaced by
/// "past C0-extendible (d=1)".
CriterionReport full_report(const SpacetimeSpec& spec, const CriteriaOptions& opt = {});

/// Log-spaced audit grid over (t_inf, min(t_sup, audit_upper)); an infinite
/// t_inf is replaced by 0 (or t_sup - audit_upper when t_sup <= 0).
std::vector<double> audit_grid(const ScaleFactor& sf, const CriteriaOptions& opt = {});

}  // namespace flrwkit
