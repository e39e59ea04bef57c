#include "flrwkit/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "flrwkit/catalog.hpp"
#include "flrwkit/format.hpp"

namespace flrwkit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::string field(const std::string& section, const std::string& key) { return section + "." + key; }

}  // namespace

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return -kInf;
  if (text == "pi") return 3.141592653589793;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size() || text.empty()) return std::nullopt;
  if (std::isnan(v)) return std::nullopt;
  return v;
}

ConfigFile ConfigFile::parse(std::string_view text) {
  ConfigFile cfg;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    // Strip a trailing comment outside quotes.
    bool in_quotes = false;
    std::size_t cut = raw.size();
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '"') in_quotes = !in_quotes;
      if (!in_quotes && (raw[i] == '#' || raw[i] == ';')) {
        cut = i;
        break;
      }
    }
    if (in_quotes) throw ConfigError(line_no, section, "line " + std::to_string(line_no) + ": unterminated string");
    const std::string_view line = trim(raw.substr(0, cut));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(line_no, "", "line " + std::to_string(line_no) + ": malformed section header");
      const std::string_view name = trim(line.substr(1, line.size() - 2));
      if (!valid_name(name))
        throw ConfigError(line_no, "", "line " + std::to_string(line_no) + ": invalid section name");
      section = std::string(name);
      if (cfg.sections_.count(section))
        throw ConfigError(line_no, section, "line " + std::to_string(line_no) + ": duplicate section [" + section + "]");
      cfg.sections_[section];
      cfg.section_lines_[section] = line_no;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(line_no, section, "line " + std::to_string(line_no) + ": expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (section.empty())
      throw ConfigError(line_no, key, "line " + std::to_string(line_no) + ": key '" + key + "' outside any section");
    if (!valid_name(key))
      throw ConfigError(line_no, section, "line " + std::to_string(line_no) + ": invalid key '" + key + "'");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    } else if (value.find('"') != std::string_view::npos) {
      throw ConfigError(line_no, field(section, key),
                        "line " + std::to_string(line_no) + ": stray quote in value of '" + key + "'");
    }
    auto& keys = cfg.sections_[section];
    if (keys.count(key))
      throw ConfigError(line_no, field(section, key),
                        "line " + std::to_string(line_no) + ": duplicate key '" + field(section, key) + "'");
    keys[key] = Value{std::string(value), line_no};
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

bool ConfigFile::has_section(const std::string& section) const { return sections_.count(section) > 0; }

bool ConfigFile::has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

const ConfigFile::Value* ConfigFile::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

std::optional<std::string> ConfigFile::get_string(const std::string& section, const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) return std::nullopt;
  return v->text;
}

std::optional<double> ConfigFile::get_double(const std::string& section, const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) return std::nullopt;
  const auto x = parse_number(v->text);
  if (!x)
    throw ConfigError(v->line, field(section, key),
                      "line " + std::to_string(v->line) + ": '" + field(section, key) + "' expects a number, got '" +
                          v->text + "'");
  return x;
}

std::optional<long long> ConfigFile::get_int(const std::string& section, const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) return std::nullopt;
  const std::string_view s = trim(v->text);
  long long x = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size())
    throw ConfigError(v->line, field(section, key),
                      "line " + std::to_string(v->line) + ": '" + field(section, key) + "' expects an integer, got '" +
                          v->text + "'");
  return x;
}

std::optional<bool> ConfigFile::get_bool(const std::string& section, const std::string& key) const {
  const Value* v = find(section, key);
  if (!v) return std::nullopt;
  if (v->text == "true" || v->text == "yes" || v->text == "1") return true;
  if (v->text == "false" || v->text == "no" || v->text == "0") return false;
  throw ConfigError(v->line, field(section, key),
                    "line " + std::to_string(v->line) + ": '" + field(section, key) + "' expects true or false");
}

void ConfigFile::check_keys(const std::string& section, const std::vector<std::string>& known) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return;
  for (const auto& [key, v] : s->second)
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(v.line, field(section, key),
                        "line " + std::to_string(v.line) + ": unknown key '" + field(section, key) + "'");
}

void ConfigFile::check_sections(const std::vector<std::string>& known) const {
  for (const auto& [name, line] : section_lines_)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ConfigError(line, name, "line " + std::to_string(line) + ": unknown section [" + name + "]");
}

namespace {

class Reader {
 public:
  explicit Reader(const ConfigFile& f) : f_(f) {}

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& why) const {
    const auto* v = f_.find(section, key);
    const std::size_t line = v ? v->line : 0;
    const std::string where = line ? "line " + std::to_string(line) + ": " : "";
    throw ConfigError(line, field(section, key), where + "'" + field(section, key) + "': " + why);
  }

  double number(const std::string& s, const std::string& k, double def) const {
    return f_.get_double(s, k).value_or(def);
  }
  double required(const std::string& s, const std::string& k) const {
    const auto v = f_.get_double(s, k);
    if (!v) fail(s, k, "missing required value");
    return *v;
  }
  double positive(const std::string& s, const std::string& k, double def) const {
    const double v = number(s, k, def);
    if (!(v > 0.0) || !std::isfinite(v)) fail(s, k, "must be a positive finite number");
    return v;
  }
  std::size_t count(const std::string& s, const std::string& k, std::size_t def, std::size_t min) const {
    const auto v = f_.get_int(s, k);
    if (!v) return def;
    if (*v < static_cast<long long>(min) || *v > 100000) fail(s, k, "must be an integer in [" + std::to_string(min) + ", 100000]");
    return static_cast<std::size_t>(*v);
  }

  // Parses an expression now so that syntax errors point at the config line.
  std::string expression(const std::string& s, const std::string& k, std::string_view variable) const {
    const auto text = f_.get_string(s, k);
    if (!text) fail(s, k, "missing required expression");
    try {
      (void)parse(*text, variable);
    } catch (const SyntaxError& e) {
      fail(s, k, std::string(to_string(e.code())) + ": " + e.what());
    } catch (const Error& e) {
      fail(s, k, std::string(to_string(e.code())) + ": " + e.what());
    }
    return *text;
  }

  const ConfigFile& file() const { return f_; }

 private:
  const ConfigFile& f_;
};

SpacetimeSpec read_spacetime(const Reader& rd, std::string& catalog_name) {
  const ConfigFile& f = rd.file();
  const std::string S = "spacetime";
  f.check_keys(S, {"catalog", "K", "d", "a", "t_inf", "t_sup", "monotone_increasing", "sublinear_m", "sublinear_b",
                   "positivity_asserted"});
  if (!f.has_section(S)) throw ConfigError(0, S, "missing section [spacetime]");

  if (const auto name = f.get_string(S, "catalog")) {
    for (const char* k : {"K", "a", "t_inf", "t_sup", "monotone_increasing", "sublinear_m", "sublinear_b",
                          "positivity_asserted"})
      if (f.has(S, k)) rd.fail(S, k, "cannot be combined with 'catalog'");
    std::optional<SpacetimeSpec> found;
    try {
      found = catalog_get(*name).spec;
    } catch (const Error& e) {
      rd.fail(S, "catalog", e.what());
    }
    SpacetimeSpec spec = *found;
    catalog_name = *name;
    if (const auto d = f.get_int(S, "d")) {
      if (*d < 1 || *d > 64) rd.fail(S, "d", "must be an integer in [1, 64]");
      spec.d = static_cast<int>(*d);
    }
    return spec;
  }

  const auto K = f.get_int(S, "K");
  if (!K) rd.fail(S, "K", "missing required value");
  if (*K < -1 || *K > 1) rd.fail(S, "K", "must be -1, 0 or 1");
  const long long d = f.get_int(S, "d").value_or(3);
  if (d < 1 || d > 64) rd.fail(S, "d", "must be an integer in [1, 64]");
  const std::string a = rd.expression(S, "a", "t");
  const double t_inf = rd.required(S, "t_inf");
  const double t_sup = rd.number(S, "t_sup", kInf);
  if (!(t_inf < t_sup) || t_inf == kInf || t_sup == -kInf) rd.fail(S, "t_sup", "interval (t_inf, t_sup) is empty");

  ScaleFactorMeta meta;
  meta.monotone_increasing = f.get_bool(S, "monotone_increasing").value_or(false);
  meta.positivity_asserted = f.get_bool(S, "positivity_asserted").value_or(false);
  if (f.has(S, "sublinear_m") || f.has(S, "sublinear_b")) {
    SublinearMeta sub;
    sub.m = rd.positive(S, "sublinear_m", 1.0);
    sub.b = rd.number(S, "sublinear_b", 0.0);
    if (!(sub.b >= 0.0) || !std::isfinite(sub.b)) rd.fail(S, "sublinear_b", "must be a finite number >= 0");
    meta.sublinear = sub;
  }
  SpacetimeSpec spec{static_cast<int>(*K), static_cast<int>(d), ScaleFactor::from_text(a, t_inf, t_sup, meta)};
  return spec;
}

SphericalSettings read_spherical(const Reader& rd, const SpacetimeSpec& spec) {
  const ConfigFile& f = rd.file();
  const std::string S = "spherical";
  f.check_keys(S, {"labeling", "t_ref", "t_min", "t_max", "r_min", "r_max", "nt", "nr", "out_nt", "out_nr"});
  SphericalSettings s;
  if (spec.K == 1) throw ConfigError(0, S, "section [spherical] needs K = 0 or K = -1");
  if (const auto l = f.get_string(S, "labeling")) {
    if (*l == "axis") s.labeling = Labeling::axis;
    else if (*l == "slice") s.labeling = Labeling::slice;
    else rd.fail(S, "labeling", "expects 'axis' or 'slice'");
  }
  s.t_ref = f.get_double(S, "t_ref");
  if (s.t_ref && !spec.sf.contains(*s.t_ref)) rd.fail(S, "t_ref", "lies outside the scale-factor interval");
  Region r{rd.required(S, "t_min"), rd.required(S, "t_max"), rd.required(S, "r_min"), rd.required(S, "r_max")};
  if (!(r.t_min < r.t_max)) rd.fail(S, "t_max", "must exceed t_min");
  if (!(r.r_min > 0.0)) rd.fail(S, "r_min", "must be positive (the chart stays off the axis)");
  if (!(r.r_min < r.r_max) || !std::isfinite(r.r_max)) rd.fail(S, "r_max", "must be finite and exceed r_min");
  if (!spec.sf.contains(r.t_min)) rd.fail(S, "t_min", "lies outside the scale-factor interval");
  if (!spec.sf.contains(r.t_max)) rd.fail(S, "t_max", "lies outside the scale-factor interval");
  s.region = r;
  s.dims.nt = rd.count(S, "nt", s.dims.nt, 5);
  s.dims.nr = rd.count(S, "nr", s.dims.nr, 5);
  s.out_nt = rd.count(S, "out_nt", s.out_nt, 2);
  s.out_nr = rd.count(S, "out_nr", s.out_nr, 2);
  return s;
}

AxiSettings read_axi(const Reader& rd, bool has_spherical) {
  const ConfigFile& f = rd.file();
  const std::string S = "axi";
  f.check_keys(S, {"source", "F", "G", "T_min", "T_max", "R_min", "R_max", "R0", "profile", "n_T", "n_R", "n_theta",
                   "theta_min", "theta_max"});
  AxiSettings a;
  const std::string source = f.get_string(S, "source").value_or(has_spherical ? "spherical" : "synthetic");
  if (source == "spherical") {
    a.source = AxiSource::spherical;
    if (!has_spherical) rd.fail(S, "source", "'spherical' needs a [spherical] section");
    for (const char* k : {"F", "G"})
      if (f.has(S, k)) rd.fail(S, k, "only valid with source = synthetic");
  } else if (source == "synthetic") {
    a.source = AxiSource::synthetic;
    a.F_text = rd.expression(S, "F", "R");
    a.G_text = rd.expression(S, "G", "R");
  } else {
    rd.fail(S, "source", "expects 'spherical' or 'synthetic'");
  }
  const bool any_box = f.has(S, "T_min") || f.has(S, "T_max") || f.has(S, "R_min") || f.has(S, "R_max");
  if (a.source == AxiSource::synthetic || any_box) {
    TRBox b{rd.required(S, "T_min"), rd.required(S, "T_max"), rd.required(S, "R_min"), rd.required(S, "R_max")};
    if (!(b.T_min <= b.T_max) || !std::isfinite(b.T_min) || !std::isfinite(b.T_max))
      rd.fail(S, "T_max", "must be finite and not below T_min");
    if (!(b.R_min > 0.0)) rd.fail(S, "R_min", "must be positive");
    if (!(b.R_min < b.R_max) || !std::isfinite(b.R_max)) rd.fail(S, "R_max", "must be finite and exceed R_min");
    a.box = b;
  }
  a.R0 = f.get_double(S, "R0");
  if (a.R0 && !(*a.R0 > 0.0 && std::isfinite(*a.R0))) rd.fail(S, "R0", "must be a positive finite number");
  if (f.has(S, "profile")) {
    a.profile = rd.expression(S, "profile", "x");
    try {
      (void)Profile(a.profile);
    } catch (const Error& e) {
      rd.fail(S, "profile", e.what());
    }
  }
  a.n_T = rd.count(S, "n_T", a.n_T, 1);
  a.n_R = rd.count(S, "n_R", a.n_R, 2);
  a.n_theta = rd.count(S, "n_theta", a.n_theta, 2);
  a.theta_min = rd.number(S, "theta_min", a.theta_min);
  a.theta_max = rd.number(S, "theta_max", a.theta_max);
  if (!(a.theta_min > 0.0)) rd.fail(S, "theta_min", "must lie in (0, pi)");
  if (!(a.theta_max < 3.141592653589793 && a.theta_min < a.theta_max)) rd.fail(S, "theta_max", "must lie in (theta_min, pi)");
  return a;
}

ProbeSettings read_probe(const Reader& rd) {
  const ConfigFile& f = rd.file();
  const std::string S = "probe";
  f.check_keys(S, {"curve", "R0", "kappa", "r1", "t1", "r_of_t", "theta", "epsilon"});
  ProbeSettings p;
  const std::string kind = f.get_string(S, "curve").value_or("ConstantR");
  if (kind == "ConstantR") p.curve.kind = CurveKind::constant_R;
  else if (kind == "NearNullIngoing") p.curve.kind = CurveKind::near_null_ingoing;
  else if (kind == "Custom") p.curve.kind = CurveKind::custom;
  else rd.fail(S, "curve", "expects ConstantR, NearNullIngoing or Custom");
  p.curve.R0 = rd.positive(S, "R0", p.curve.R0);
  p.curve.kappa = rd.number(S, "kappa", p.curve.kappa);
  if (!(p.curve.kappa > 0.0 && p.curve.kappa < 1.0)) rd.fail(S, "kappa", "must lie in (0, 1)");
  p.curve.r1 = rd.positive(S, "r1", p.curve.r1);
  p.curve.t1 = rd.number(S, "t1", p.curve.t1);
  if (p.curve.kind == CurveKind::custom) p.curve.r_of_t = rd.expression(S, "r_of_t", "t");
  else if (f.has(S, "r_of_t")) rd.fail(S, "r_of_t", "only valid with curve = Custom");
  p.curve.theta = rd.number(S, "theta", p.curve.theta);
  if (!(p.curve.theta > 0.0 && p.curve.theta < 3.141592653589793)) rd.fail(S, "theta", "must lie in (0, pi)");
  p.epsilon = rd.positive(S, "epsilon", p.epsilon);
  return p;
}

VerifySettings read_verify(const Reader& rd) {
  const ConfigFile& f = rd.file();
  const std::string S = "verify";
  f.check_keys(S, {"n_samples", "h", "tol", "seed", "identities"});
  VerifySettings v;
  v.options.n_samples = rd.count(S, "n_samples", v.options.n_samples, 1);
  v.options.h = rd.positive(S, "h", v.options.h);
  v.options.tol = rd.positive(S, "tol", v.options.tol);
  if (const auto seed = f.get_int(S, "seed")) {
    if (*seed < 0) rd.fail(S, "seed", "must be a non-negative integer");
    v.options.seed = static_cast<std::uint64_t>(*seed);
  }
  if (const auto ids = f.get_string(S, "identities")) {
    std::stringstream ss(*ids);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string id(trim(item));
      if (id != "sph" && id != "axi" && id != "jacobian") rd.fail(S, "identities", "unknown identity '" + id + "'");
      if (std::find(v.identities.begin(), v.identities.end(), id) == v.identities.end()) v.identities.push_back(id);
    }
    if (v.identities.empty()) rd.fail(S, "identities", "lists no identity");
  }
  return v;
}

}  // namespace

RunConfig load_run_config(const ConfigFile& file) {
  file.check_sections({"spacetime", "spherical", "axi", "probe", "verify"});
  const Reader rd(file);
  std::string catalog_name;
  SpacetimeSpec spec = read_spacetime(rd, catalog_name);
  RunConfig rc{std::move(spec)};
  rc.catalog_name = std::move(catalog_name);
  try {
    rc.spec.validate();
  } catch (const Error& e) {
    throw ConfigError(0, "spacetime", e.what());
  }
  rc.has_spherical = file.has_section("spherical");
  if (rc.has_spherical) rc.spherical = read_spherical(rd, rc.spec);
  rc.has_axi = file.has_section("axi");
  if (rc.has_axi) rc.axi = read_axi(rd, rc.has_spherical);
  rc.probe = read_probe(rd);
  rc.verify = read_verify(rd);
  return rc;
}

}  // namespace flrwkit
