#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flrwkit/criteria.hpp"
#include "flrwkit/probe.hpp"
#include "flrwkit/sph_chart.hpp"
#include "flrwkit/verify.hpp"

namespace flrwkit {

/// Flat key-value text with sections:
///
///   # comment
///   [spacetime]
///   K = 0
///   a = "t^(1/2)"      # strings may be quoted; expressions should be
///
/// Keys are unique within a section. Every error is a ConfigError carrying the
/// 1-based line and the "section.key" field.
class ConfigFile {
 public:
  struct Value {
    std::string text;
    std::size_t line = 0;
  };

  static ConfigFile parse(std::string_view text);
  /// Throws ConfigError (line 0) when the file cannot be read.
  static ConfigFile load(const std::string& path);

  bool has_section(const std::string& section) const;
  bool has(const std::string& section, const std::string& key) const;
  const Value* find(const std::string& section, const std::string& key) const;

  std::optional<std::string> get_string(const std::string& section, const std::string& key) const;
  std::optional<double> get_double(const std::string& section, const std::string& key) const;
  std::optional<long long> get_int(const std::string& section, const std::string& key) const;
  std::optional<bool> get_bool(const std::string& section, const std::string& key) const;

  /// Rejects keys of `section` that are not in `known`.
  void check_keys(const std::string& section, const std::vector<std::string>& known) const;
  /// Rejects sections that are not in `known`.
  void check_sections(const std::vector<std::string>& known) const;

 private:
  std::map<std::string, std::map<std::string, Value>> sections_;
  std::map<std::string, std::size_t> section_lines_;
};

/// Locale-independent number parsing; accepts "inf", "-inf" and "pi".
std::optional<double> parse_number(std::string_view text);

struct SphericalSettings {
  Labeling labeling = Labeling::axis;
  std::optional<double> t_ref;
  std::optional<Region> region;
  GridDims dims;
  std::size_t out_nt = 17;  // export grid
  std::size_t out_nr = 17;
};

enum class AxiSource { spherical, synthetic };

struct AxiSettings {
  AxiSource source = AxiSource::spherical;
  std::string F_text, G_text;  // synthetic fields in R
  std::optional<TRBox> box;    // required for synthetic sources, optional otherwise
  std::optional<double> R0;
  std::string profile = "x";
  std::size_t n_T = 1, n_R = 9, n_theta = 9;
  double theta_min = 0.1, theta_max = 3.0415926535897931;
};

struct ProbeSettings {
  CurveSpec curve;
  double epsilon = 1e-2;  // witness tolerance
};

struct VerifySettings {
  VerifyOptions options;
  std::vector<std::string> identities;  // empty: every identity the config supports
};

/// Everything a CLI run needs, validated up front.
struct RunConfig {
  explicit RunConfig(SpacetimeSpec s) : spec(std::move(s)) {}

  SpacetimeSpec spec;
  std::string catalog_name;  // set when [spacetime] names a catalog entry
  bool has_spherical = false;
  SphericalSettings spherical;
  bool has_axi = false;
  AxiSettings axi;
  ProbeSettings probe;
  VerifySettings verify;
};

/// Builds and validates a run configuration; expressions are parsed here so
/// that malformed input is reported against its line.
RunConfig load_run_config(const ConfigFile& file);

}  // namespace flrwkit
