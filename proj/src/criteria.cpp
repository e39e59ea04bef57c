#include "flrwkit/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "flrwkit/format.hpp"

namespace flrwkit {

void SpacetimeSpec::validate() const {
  if (K < -1 || K > 1) throw Error(ErrorCode::domain, "curvature K must be -1, 0 or +1");
  if (d < 1) throw Error(ErrorCode::domain, "spatial dimension d must be >= 1");
}

std::string_view curvature_name(int K) {
  switch (K) {
    case 1: return "spherical";
    case 0: return "flat";
    case -1: return "hyperbolic";
  }
  return "invalid";
}

std::string_view to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::holds: return "holds";
    case HypothesisStatus::fails: return "fails";
    case HypothesisStatus::sampled_only: return "sampled-only";
    case HypothesisStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string_view to_string(Conclusion c) {
  switch (c) {
    case Conclusion::applies: return "Applies";
    case Conclusion::does_not_apply: return "DoesNotApply";
    case Conclusion::inconclusive: return "Inconclusive";
  }
  return "?";
}

const Verdict& CriterionReport::verdict(std::string_view id) const {
  for (const auto& v : verdicts)
    if (v.id == id) return v;
  throw Error(ErrorCode::unknown_entry, "no verdict with id '" + std::string(id) + "'");
}

const std::vector<std::string>& statement_ids() {
  static const std::vector<std::string> ids{"future_c0",         "past_c01",   "past_c0",
                                            "ling_past_eternal", "milne_like", "symmetric_class_obstruction"};
  return ids;
}

std::vector<double> audit_grid(const ScaleFactor& sf, const CriteriaOptions& opt) {
  const double upper = std::min(sf.t_sup(), opt.audit_upper);
  double lower = sf.t_inf();
  if (!std::isfinite(lower)) lower = upper > 0.0 ? 0.0 : upper - opt.audit_upper;
  const double span = upper - lower;
  std::vector<double> grid;
  if (!(span > 0.0) || opt.audit_points < 2) return grid;
  grid.reserve(opt.audit_points);
  const double lo = std::log10(span) - 12.0;
  const double hi = std::log10(span * (1.0 - 1e-9));
  const double first = std::max(lo, std::log10(span) - 12.0 + 6.0);  // 1e-6 of the span
  for (std::size_t i = 0; i < opt.audit_points; ++i) {
    const double e = first + (hi - first) * static_cast<double>(i) / static_cast<double>(opt.audit_points - 1);
    const double t = lower + std::pow(10.0, e);
    if (sf.contains(t)) grid.push_back(t);
  }
  return grid;
}

namespace {

Hypothesis make(std::string name, HypothesisStatus s, std::string evidence) {
  return {std::move(name), s, std::move(evidence)};
}

Hypothesis bool_hyp(std::string name, bool ok, std::string evidence) {
  return make(std::move(name), ok ? HypothesisStatus::holds : HypothesisStatus::fails, std::move(evidence));
}

Conclusion conclude(const std::vector<Hypothesis>& hs) {
  bool inconclusive = false;
  for (const auto& h : hs) {
    if (h.status == HypothesisStatus::fails) return Conclusion::does_not_apply;
    if (h.status == HypothesisStatus::inconclusive) inconclusive = true;
  }
  return inconclusive ? Conclusion::inconclusive : Conclusion::applies;
}

HypothesisStatus from_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::finite_upper_endpoint:
    case ErrorCode::finite_lower_endpoint:
    case ErrorCode::anchor_outside_interval:
      return HypothesisStatus::fails;
    default:
      return HypothesisStatus::inconclusive;
  }
}

template <class T>
struct Lazy {
  std::optional<T> value;
  std::optional<Error> error;

  const T& get(const std::function<T()>& make_value) {
    if (!value && !error) {
      try {
        value = make_value();
      } catch (const Error& e) {
        error = e;
      }
    }
    if (error) throw *error;
    return *value;
  }
};

struct SublinearCheck {
  HypothesisStatus status;
  std::string evidence;
};

// Diagnostics shared between the verdicts of one report.
class Evidence {
 public:
  Evidence(const SpacetimeSpec& spec, const CriteriaOptions& opt) : spec_(spec), opt_(opt) {}

  const SpacetimeSpec& spec() const { return spec_; }
  const CriteriaOptions& opt() const { return opt_; }
  const ScaleFactor& sf() const { return spec_.sf; }

  const HorizonDiag& horizon() {
    return horizon_.get([&] { return has_particle_horizon(sf(), std::nullopt, opt_.thresholds); });
  }
  const LimitDiag& lim_a() {
    return lim_a_.get([&] { return limit_at_lower(sf(), Quantity::a, opt_.thresholds); });
  }
  const LimitDiag& lim_a_prime() {
    return lim_ap_.get([&] { return limit_at_lower(sf(), Quantity::a_prime, opt_.thresholds); });
  }
  const IntegralDiag& future() {
    return future_.get([&] { return future_integral(sf(), opt_.thresholds); });
  }
  const LimitDiag& sbierski() {
    return sbierski_.get([&] { return sbierski_hyperbolic_limit(sf(), opt_.thresholds); });
  }
  const LimitDiag& ling() {
    return ling_.get([&] { return ling_limit(sf(), opt_.thresholds); });
  }
  const std::vector<double>& grid() {
    return grid_.get([&] { return audit_grid(sf(), opt_); });
  }
  const SublinearCheck& sublinear() {
    return sublinear_.get([&] { return check_sublinear(); });
  }
  const SublinearCheck& positive_slope() {
    return slope_.get([&] { return check_positive_slope(); });
  }
  const Verdict& future_verdict();

 private:
  SublinearCheck check_sublinear();
  SublinearCheck check_sublinear_bound();
  SublinearCheck check_positive_slope();

  const SpacetimeSpec& spec_;
  const CriteriaOptions& opt_;
  Lazy<HorizonDiag> horizon_;
  Lazy<LimitDiag> lim_a_;
  Lazy<LimitDiag> lim_ap_;
  Lazy<IntegralDiag> future_;
  Lazy<LimitDiag> sbierski_;
  Lazy<LimitDiag> ling_;
  Lazy<std::vector<double>> grid_;
  Lazy<SublinearCheck> sublinear_;
  Lazy<SublinearCheck> slope_;
  std::optional<Verdict> future_verdict_;
};

SublinearCheck Evidence::check_sublinear() {
  try {
    return check_sublinear_bound();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::non_finite) throw;
    return {HypothesisStatus::fails, std::string("a(t) overflows on the audit grid, exceeding every linear bound: ") +
                                         e.what()};
  }
}

SublinearCheck Evidence::check_sublinear_bound() {
  const auto& g = grid();
  if (g.size() < 2) return {HypothesisStatus::inconclusive, "audit grid is empty"};
  if (std::isfinite(sf().t_sup()))
    return {HypothesisStatus::fails, "growth bound needs t_sup = +inf"};
  if (const auto& m = sf().meta().sublinear) {
    for (double t : g) {
      const double a = sf().a(t);
      const double bound = m->m * t + m->b;
      if (a > bound * (1.0 + 1e-9) + 1e-300)
        return {HypothesisStatus::fails, "a(" + format_double(t) + ")=" + format_double(a) +
                                             " exceeds m*t+b=" + format_double(bound)};
    }
    return {HypothesisStatus::holds, "declared m=" + format_double(m->m) + ", b=" + format_double(m->b) +
                                         " verified on " + std::to_string(g.size()) + " audit points"};
  }
  // No declared bound: fit one and require non-superlinear growth over the top decade.
  const double t_top = g.back();
  const double t_dec = t_top / 10.0;
  auto it = std::lower_bound(g.begin(), g.end(), t_dec);
  if (it == g.end() || !(*it > 0.0) || *it >= t_top)
    return {HypothesisStatus::inconclusive, "audit grid does not span a positive decade"};
  const double slope = std::log(sf().a(t_top) / sf().a(*it)) / std::log(t_top / *it);
  if (!(slope <= 1.0 + 1e-6))
    return {HypothesisStatus::fails, "log-log growth exponent " + format_double(slope) +
                                         " > 1 over [" + format_double(*it) + ", " + format_double(t_top) + "]"};
  const double b = std::max(0.0, sf().a(g.front()));
  double m = 0.0;
  for (double t : g)
    if (t > 0.0) m = std::max(m, (sf().a(t) - b) / t);
  m = std::max(m, 1e-12);
  return {HypothesisStatus::sampled_only, "no declared bound; grid fit m=" + format_double(m) +
                                              ", b=" + format_double(b) + ", top-decade exponent " +
                                              format_double(slope)};
}

SublinearCheck Evidence::check_positive_slope() {
  const auto& g = grid();
  if (g.empty()) return {HypothesisStatus::inconclusive, "audit grid is empty"};
  std::size_t checked = 0;
  std::string truncated;
  for (double t : g) {
    double ap = 0.0;
    try {
      ap = sf().a_dual(t).deriv;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_finite || checked == 0) throw;
      truncated = " (grid truncated at t=" + format_double(t) + ": overflow)";
      break;
    }
    if (!(ap > 0.0))
      return {HypothesisStatus::fails, "a'(" + format_double(t) + ")=" + format_double(ap) + " <= 0"};
    ++checked;
  }
  return {HypothesisStatus::sampled_only, "a' > 0 at " + std::to_string(checked) + " audit points" + truncated};
}

// Runs `body`; a thrown diagnostic error becomes the hypothesis status.
Hypothesis guarded(const std::string& name, const std::function<Hypothesis()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return make(name, from_error(e), std::string(to_string(e.code())) + ": " + e.what());
  }
}

Hypothesis horizon_hyp(Evidence& ev, bool want_horizon) {
  const std::string name = want_horizon ? "particle horizon (int_{t_inf}^{anchor} dt/a < inf)"
                                        : "no particle horizon (int_{t_inf}^{anchor} dt/a = inf)";
  return guarded(name, [&] {
    const HorizonDiag& h = ev.horizon();
    const std::string evidence = std::string(to_string(h.kind)) + ": " + h.integral.label() + " [" + h.integral.note + "]";
    if (h.kind == HorizonKind::inconclusive) return make(name, HypothesisStatus::inconclusive, evidence);
    return bool_hyp(name, (h.kind == HorizonKind::has_horizon) == want_horizon, evidence);
  });
}

Hypothesis big_bang_hyp(Evidence& ev) {
  const std::string name = "Big Bang (a -> 0 as t -> t_inf+)";
  return guarded(name, [&] {
    const LimitDiag& l = ev.lim_a();
    const std::string evidence = "lim a = " + l.label() + " [" + l.note + "]";
    if (l.kind == LimitKind::inconclusive) return make(name, HypothesisStatus::inconclusive, evidence);
    return bool_hyp(name, l.kind == LimitKind::zero, evidence);
  });
}

Hypothesis finite_big_bang_hyp(Evidence& ev) {
  const std::string name = "Big Bang at finite time (t_inf finite, a -> 0)";
  if (!std::isfinite(ev.sf().t_inf())) return bool_hyp(name, false, "t_inf = -inf");
  Hypothesis h = big_bang_hyp(ev);
  h.name = name;
  return h;
}

Hypothesis dim_hyp(int d, int min_d) {
  return bool_hyp("d >= " + std::to_string(min_d), d >= min_d, "d = " + std::to_string(d));
}

Hypothesis curvature_hyp(int K, std::initializer_list<int> allowed) {
  std::string set;
  bool ok = false;
  for (int k : allowed) {
    set += (set.empty() ? "" : ",") + std::to_string(k);
    ok = ok || k == K;
  }
  return bool_hyp("K in {" + set + "}", ok, "K = " + std::to_string(K) + " (" + std::string(curvature_name(K)) + ")");
}

Hypothesis sublinear_hyp(Evidence& ev) {
  const std::string name = "sublinear growth a(t) <= m t + b";
  return guarded(name, [&] {
    const auto& s = ev.sublinear();
    return make(name, s.status, s.evidence);
  });
}

Hypothesis slope_hyp(Evidence& ev) {
  const std::string name = "a'(t) > 0";
  return guarded(name, [&] {
    const auto& s = ev.positive_slope();
    return make(name, s.status, s.evidence);
  });
}

Verdict compute_future(Evidence& ev) {
  const SpacetimeSpec& spec = ev.spec();
  Verdict v;
  v.id = "future_c0";
  v.text = "future C0-inextendible";

  std::vector<Hypothesis> cond_i{curvature_hyp(spec.K, {0, -1})};
  if (cond_i.front().status != HypothesisStatus::fails) {
    cond_i.push_back(sublinear_hyp(ev));
    cond_i.push_back(slope_hyp(ev));
  }
  const std::string name_ii = "int_{anchor}^{inf} a/sqrt(a^2+1) dt = inf";
  std::vector<Hypothesis> cond_ii{guarded(name_ii, [&] {
    const IntegralDiag& f = ev.future();
    const std::string evidence = f.label() + " [" + f.note + "]";
    if (f.kind == IntegralKind::inconclusive) return make(name_ii, HypothesisStatus::inconclusive, evidence);
    return bool_hyp(name_ii, f.kind == IntegralKind::divergent, evidence);
  })};
  for (auto& h : cond_i) h.name = "(i) " + h.name;
  for (auto& h : cond_ii) h.name = "(ii) " + h.name;

  const Conclusion ci = conclude(cond_i);
  const Conclusion cii = conclude(cond_ii);
  auto summary = [](const char* tag, Conclusion c) {
    return std::string(tag) + " " + std::string(to_string(c));
  };
  if (ci == Conclusion::applies || cii == Conclusion::applies) {
    v.conclusion = Conclusion::applies;
    if (ci == Conclusion::applies) v.hypotheses.insert(v.hypotheses.end(), cond_i.begin(), cond_i.end());
    if (cii == Conclusion::applies) v.hypotheses.insert(v.hypotheses.end(), cond_ii.begin(), cond_ii.end());
    v.note = "via " + std::string(ci == Conclusion::applies ? "(i)" : "") +
             (ci == Conclusion::applies && cii == Conclusion::applies ? " and " : "") +
             (cii == Conclusion::applies ? "(ii)" : "") + "; " + summary("(i)", ci) + ", " + summary("(ii)", cii);
  } else {
    v.hypotheses = cond_i;
    v.hypotheses.insert(v.hypotheses.end(), cond_ii.begin(), cond_ii.end());
    v.conclusion = (ci == Conclusion::inconclusive || cii == Conclusion::inconclusive) ? Conclusion::inconclusive
                                                                                     : Conclusion::does_not_apply;
    v.note = summary("(i)", ci) + ", " + summary("(ii)", cii);
  }
  if (!(spec.sf.t_inf() == 0.0 && spec.sf.t_sup() == kInf))
    v.note += "; interval differs from (0, inf): a' > 0 and the growth bound are checked on the given interval";
  return v;
}

const Verdict& Evidence::future_verdict() {
  if (!future_verdict_) future_verdict_ = compute_future(*this);
  return *future_verdict_;
}

Verdict compute_past_c01(Evidence& ev) {
  Verdict v;
  v.id = "past_c01";
  v.text = "past C0,1_loc-inextendible";
  v.hypotheses = {horizon_hyp(ev, true), big_bang_hyp(ev), dim_hyp(ev.spec().d, 1)};
  v.conclusion = conclude(v.hypotheses);
  return v;
}

Verdict compute_past_c0(Evidence& ev) {
  const SpacetimeSpec& spec = ev.spec();
  Verdict v;
  v.id = "past_c0";
  v.text = "past C0-inextendible";
  if (spec.K == 0) {
    v.hypotheses = {curvature_hyp(spec.K, {1, -1})};
    v.conclusion = Conclusion::does_not_apply;
    v.note = "no general past C0-inextendibility criterion is known for flat FLRW";
    return v;
  }
  v.hypotheses = {curvature_hyp(spec.K, {1, -1}), dim_hyp(spec.d, 2), horizon_hyp(ev, false)};
  if (spec.K == -1) {
    const std::string name = "a(t) exp(int_t^{anchor} ds/a) -> inf";
    v.hypotheses.push_back(guarded(name, [&] {
      const LimitDiag& l = ev.sbierski();
      const std::string evidence = "limit = " + l.label() + " [" + l.note + "]";
      if (l.kind == LimitKind::inconclusive) return make(name, HypothesisStatus::inconclusive, evidence);
      return bool_hyp(name, l.kind == LimitKind::plus_infinity, evidence);
    }));
  }
  v.conclusion = conclude(v.hypotheses);
  return v;
}

Verdict compute_ling(Evidence& ev) {
  const SpacetimeSpec& spec = ev.spec();
  Verdict v;
  v.id = "ling_past_eternal";
  v.text = "past C0-inextendible (past eternal flat FLRW)";
  v.hypotheses = {curvature_hyp(spec.K, {0}),
                  bool_hyp("t_inf = -inf", !std::isfinite(spec.sf.t_inf()),
                           "t_inf = " + format_double(spec.sf.t_inf()))};
  if (conclude(v.hypotheses) == Conclusion::applies) {
    v.hypotheses.push_back(dim_hyp(spec.d, 2));
    v.hypotheses.push_back(big_bang_hyp(ev));
    const std::string name = "a(t) int_t^{anchor} ds/a -> inf as t -> -inf";
    v.hypotheses.push_back(guarded(name, [&] {
      const LimitDiag& l = ev.ling();
      const std::string evidence = "limit = " + l.label() + " [" + l.note + "]";
      if (l.kind == LimitKind::inconclusive) return make(name, HypothesisStatus::inconclusive, evidence);
      return bool_hyp(name, l.kind == LimitKind::plus_infinity, evidence);
    }));
  }
  v.conclusion = conclude(v.hypotheses);
  return v;
}

Verdict compute_milne_like(Evidence& ev) {
  const SpacetimeSpec& spec = ev.spec();
  const double tol = ev.opt().milne_tol;
  Verdict v;
  v.id = "milne_like";
  v.text = "predicted C0-extendible (Milne-like)";
  v.hypotheses = {curvature_hyp(spec.K, {-1})};
  if (conclude(v.hypotheses) != Conclusion::applies) {
    v.conclusion = Conclusion::does_not_apply;
    return v;
  }
  v.hypotheses.push_back(horizon_hyp(ev, false));
  v.hypotheses.push_back(sublinear_hyp(ev));
  v.hypotheses.push_back(slope_hyp(ev));
  const std::string name_ap = "a'(0) = 1 (within " + format_double(tol) + ")";
  v.hypotheses.push_back(guarded(name_ap, [&] {
    const LimitDiag& l = ev.lim_a_prime();
    const std::string evidence = "lim a' = " + l.label() + " [" + l.note + "]";
    if (l.kind == LimitKind::inconclusive) return make(name_ap, HypothesisStatus::inconclusive, evidence);
    return bool_hyp(name_ap, l.kind == LimitKind::finite && std::abs(l.value - 1.0) <= tol, evidence);
  }));
  const std::string name_lim = "a(t) exp(int_t^{anchor} ds/a) -> finite positive limit";
  v.hypotheses.push_back(guarded(name_lim, [&] {
    const LimitDiag& l = ev.sbierski();
    const std::string evidence = "limit = " + l.label() + " [" + l.note + "]";
    if (l.kind == LimitKind::inconclusive) return make(name_lim, HypothesisStatus::inconclusive, evidence);
    return bool_hyp(name_lim, l.kind == LimitKind::finite && l.value > 0.0, evidence);
  }));
  v.conclusion = conclude(v.hypotheses);
  return v;
}

Verdict compute_symmetric(Evidence& ev) {
  const SpacetimeSpec& spec = ev.spec();
  const double tol = ev.opt().milne_tol;
  Verdict v;
  v.id = "symmetric_class_obstruction";
  v.hypotheses = {curvature_hyp(spec.K, {0, -1})};
  if (conclude(v.hypotheses) != Conclusion::applies) {
    v.conclusion = Conclusion::does_not_apply;
    v.text = "no natural strongly spherically symmetric / strongly axisymmetric C0-extension";
    return v;
  }
  v.hypotheses.push_back(dim_hyp(spec.d, 2));
  v.hypotheses.push_back(finite_big_bang_hyp(ev));
  const bool flat = spec.K == 0;
  const std::string name_ap = flat ? "a'(0) in (0, inf]" : "a'(0) in [0, inf] \\ {1}";
  v.hypotheses.push_back(guarded(name_ap, [&] {
    const LimitDiag& l = ev.lim_a_prime();
    const std::string evidence = "lim a' = " + l.label() + " [" + l.note + "]";
    if (l.kind == LimitKind::inconclusive) return make(name_ap, HypothesisStatus::inconclusive, evidence);
    bool ok = false;
    if (flat) {
      ok = l.kind == LimitKind::plus_infinity || (l.kind == LimitKind::finite && l.value > 0.0);
    } else {
      ok = l.kind == LimitKind::plus_infinity || l.kind == LimitKind::zero ||
           (l.kind == LimitKind::finite && l.value >= 0.0 && std::abs(l.value - 1.0) > tol);
    }
    return bool_hyp(name_ap, ok, evidence);
  }));
  const Verdict& fut = ev.future_verdict();
  const std::string name_fut = "future C0-inextendible";
  Hypothesis hf{name_fut, HypothesisStatus::inconclusive, "future_c0 " + std::string(to_string(fut.conclusion))};
  if (fut.conclusion == Conclusion::applies) hf.status = HypothesisStatus::holds;
  if (fut.conclusion == Conclusion::does_not_apply) hf.status = HypothesisStatus::fails;
  v.hypotheses.push_back(hf);
  v.conclusion = conclude(v.hypotheses);
  v.text = spec.d == 3 ? "no natural strongly spherically symmetric C0-extension and no natural strongly "
                         "axisymmetric C0-extension"
                       : "no natural strongly spherically symmetric C0-extension";
  if (spec.d != 3) v.note = "strongly axisymmetric obstruction is stated for d = 3 only";
  return v;
}

bool applies(const CriterionReport& r, std::string_view id) {
  return r.verdict(id).conclusion == Conclusion::applies;
}

std::string table_row(const CriterionReport& r) {
  const SpacetimeSpec& s = r.spec;
  std::ostringstream row;
  row << "K=" << s.K << " (" << curvature_name(s.K) << "), d=" << s.d << ", a(t)=" << s.sf.text() << " on ("
      << format_double(s.sf.t_inf()) << ", " << format_double(s.sf.t_sup()) << ") | future: ";
  const Verdict& fut = r.verdict("future_c0");
  row << (fut.conclusion == Conclusion::applies ? "C0-inextendible"
          : fut.conclusion == Conclusion::inconclusive ? "inconclusive"
                                                       : "no criterion met");
  row << " | past: ";
  std::vector<std::string> past;
  if (s.d == 1) past.emplace_back("past C0-extendible (d=1)");
  if (applies(r, "past_c01")) past.emplace_back("with particle horizon: C0,1_loc-inextendible");
  if (applies(r, "past_c0")) past.emplace_back("no particle horizon: C0-inextendible");
  if (applies(r, "ling_past_eternal")) past.emplace_back("past eternal: C0-inextendible");
  if (applies(r, "symmetric_class_obstruction"))
    past.emplace_back(s.d == 3 ? "no natural strongly spherically symmetric or axisymmetric C0-extension"
                               : "no natural strongly spherically symmetric C0-extension");
  if (applies(r, "milne_like")) past.emplace_back("Milne-like: C0-extendible");
  if (s.K == 0 && s.d >= 2 && std::isfinite(s.sf.t_inf()) && !applies(r, "past_c01"))
    past.emplace_back("general C0-extendibility of flat FLRW with a finite-time Big Bang is open");
  if (past.empty()) past.emplace_back("no criterion met");
  for (std::size_t i = 0; i < past.size(); ++i) row << (i ? "; " : "") << past[i];
  return row.str();
}

}  // namespace

Verdict future_c0(const SpacetimeSpec& spec, const CriteriaOptions& opt) {
  Evidence ev(spec, opt);
  return ev.future_verdict();
}
Verdict past_c01(const SpacetimeSpec& spec, const CriteriaOptions& opt) {
  Evidence ev(spec, opt);
  return compute_past_c01(ev);
}
Verdict past_c0(const SpacetimeSpec& spec, const CriteriaOptions& opt) {
  Evidence ev(spec, opt);
  return compute_past_c0(ev);
}
Verdict ling_past_eternal(const SpacetimeSpec& spec, const CriteriaOptions& opt) {
  Evidence ev(spec, opt);
  return compute_ling(ev);
}
Verdict milne_like(const SpacetimeSpec& spec, const CriteriaOptions& opt) {
  Evidence ev(spec, opt);
  return compute_milne_like(ev);
}
Verdict symmetric_class_obstruction(const SpacetimeSpec& spec, const CriteriaOptions& opt) {
  Evidence ev(spec, opt);
  return compute_symmetric(ev);
}

CriterionReport full_report(const SpacetimeSpec& spec, const CriteriaOptions& opt) {
  spec.validate();
  Evidence ev(spec, opt);
  CriterionReport r{spec, spec.sf.anchor_rule(), {}, {}};
  r.verdicts.push_back(ev.future_verdict());
  r.verdicts.push_back(compute_past_c01(ev));
  r.verdicts.push_back(compute_past_c0(ev));
  r.verdicts.push_back(compute_ling(ev));
  r.verdicts.push_back(compute_milne_like(ev));
  r.verdicts.push_back(compute_symmetric(ev));
  if (spec.d == 1) {
    for (auto& v : r.verdicts) {
      if (v.id == "past_c0" || v.id == "ling_past_eternal" || v.id == "symmetric_class_obstruction") {
        v.conclusion = Conclusion::does_not_apply;
        v.note = "overridden: past C0-extendible (d=1)";
      }
    }
  }
  r.table_row = table_row(r);
  return r;
}

}  // namespace flrwkit
