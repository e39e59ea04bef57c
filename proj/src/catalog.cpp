#include "flrwkit/catalog.hpp"

#include <algorithm>

#include "flrwkit/format.hpp"

namespace flrwkit {

namespace {

constexpr Conclusion kYes = Conclusion::applies;
constexpr Conclusion kNo = Conclusion::does_not_apply;

ScaleFactorMeta sublinear(double m, double b) {
  ScaleFactorMeta meta;
  meta.monotone_increasing = true;
  meta.sublinear = SublinearMeta{m, b};
  return meta;
}

ScaleFactorMeta increasing() {
  ScaleFactorMeta meta;
  meta.monotone_increasing = true;
  return meta;
}

CatalogEntry entry(std::string name, int K, std::string a, double t_inf, double t_sup, ScaleFactorMeta meta,
                   std::vector<ExpectedVerdict> expected, std::string provenance,
                   std::vector<std::string> flags = {}) {
  return {std::move(name),
          SpacetimeSpec{K, 3, ScaleFactor::from_text(a, t_inf, t_sup, meta)},
          std::move(expected),
          std::move(provenance),
          std::move(flags)};
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back(entry("milne", -1, "t", 0.0, kInf, sublinear(1.0, 0.0),
                    {{"future_c0", kYes},
                     {"past_c01", kNo},
                     {"past_c0", kNo},
                     {"ling_past_eternal", kNo},
                     {"milne_like", kYes},
                     {"symmetric_class_obstruction", kNo}},
                    "Milne spacetime: the interior of the future light cone in Minkowski space"));
  c.push_back(entry("milne_like_quadratic", -1, "t + t^2", 0.0, kInf, increasing(),
                    {{"future_c0", kYes}, {"past_c0", kNo}, {"milne_like", kNo}, {"symmetric_class_obstruction", kNo}},
                    "Milne-like family: a'(0) = 1 with limit a e^{int 1/a} = 1/2, superlinear growth",
                    {"superlinear-growth: sublinear bound fails, Milne-like criterion does not apply"}));
  c.push_back(entry("milne_like_rational", -1, "(t + 2*t^2)/(1 + t)", 0.0, kInf, sublinear(2.0, 0.0),
                    {{"future_c0", kYes}, {"past_c0", kNo}, {"milne_like", kYes}, {"symmetric_class_obstruction", kNo}},
                    "Milne-like family: sublinear example with a'(0) = 1 and limit 1/sqrt(3)",
                    {"artifact-supplied"}));
  c.push_back(entry("desitter_flat", 0, "exp(t)", -kInf, kInf, increasing(),
                    {{"future_c0", kYes},
                     {"past_c01", kNo},
                     {"past_c0", kNo},
                     {"ling_past_eternal", kNo},
                     {"milne_like", kNo},
                     {"symmetric_class_obstruction", kNo}},
                    "flatly sliced patch of de Sitter: a(t) = e^t"));
  c.push_back(entry("desitter_hyperbolic_squared", -1, "sinh(t)^2", 0.0, kInf, increasing(),
                    {{"future_c0", kYes},
                     {"past_c01", kNo},
                     {"past_c0", kYes},
                     {"milne_like", kNo},
                     {"symmetric_class_obstruction", kYes}},
                    "hyperbolically sliced patch of de Sitter, literal variant: a(t) = sinh^2(t)",
                    {"typo-suspect"}));
  c.push_back(entry("desitter_hyperbolic_standard", -1, "sinh(t)", 0.0, kInf, increasing(),
                    {{"future_c0", kYes},
                     {"past_c01", kNo},
                     {"past_c0", kNo},
                     {"milne_like", kNo},
                     {"symmetric_class_obstruction", kNo}},
                    "hyperbolically sliced patch of de Sitter in the standard slicing: a(t) = sinh(t)",
                    {"typo-suspect", "standard-slicing"}));
  c.push_back(entry("radiation_flat", 0, "t^(1/2)", 0.0, kInf, sublinear(1.0, 1.0),
                    {{"future_c0", kYes},
                     {"past_c01", kYes},
                     {"past_c0", kNo},
                     {"ling_past_eternal", kNo},
                     {"milne_like", kNo},
                     {"symmetric_class_obstruction", kYes}},
                    "radiation-dominated stage: a(t) = t^(1/2)", {"artifact-supplied exponent"}));
  c.push_back(entry("matter_flat", 0, "t^(2/3)", 0.0, kInf, sublinear(1.0, 1.0),
                    {{"future_c0", kYes},
                     {"past_c01", kYes},
                     {"past_c0", kNo},
                     {"ling_past_eternal", kNo},
                     {"milne_like", kNo},
                     {"symmetric_class_obstruction", kYes}},
                    "matter-dominated stage: a(t) = t^(2/3)", {"artifact-supplied exponent"}));
  c.push_back(entry("spherical_linear", 1, "t", 0.0, kInf, increasing(),
                    {{"future_c0", kYes},
                     {"past_c01", kNo},
                     {"past_c0", kYes},
                     {"milne_like", kNo},
                     {"symmetric_class_obstruction", kNo}},
                    "spherical power law p = 1 without particle horizon"));
  return c;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> c = build_catalog();
  return c;
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : catalog()) names.push_back(e.name);
  return names;
}

CatalogEntry catalog_get(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return e;
  throw Error(ErrorCode::unknown_entry, "unknown catalog entry '" + name + "'");
}

CatalogEntry power_law(double p, int K, int d) {
  if (!(p > 0.0) || !std::isfinite(p)) throw Error(ErrorCode::domain, "power law needs a finite exponent p > 0");
  const std::string a = "t^" + format_double(p);
  ScaleFactorMeta meta = increasing();
  if (p <= 1.0) meta.sublinear = SublinearMeta{1.0, 1.0};
  CatalogEntry e{"power_law(" + format_double(p) + ", K=" + std::to_string(K) + ")",
                 SpacetimeSpec{K, d, ScaleFactor::from_text(a, 0.0, kInf, meta)},
                 {},
                 "generator: a(t) = t^p on (0, inf)",
                 {"generated"}};
  e.expected.push_back({"past_c01", p < 1.0 ? kYes : kNo});
  if (K == 1 && d >= 2) e.expected.push_back({"past_c0", p >= 1.0 ? kYes : kNo});
  return e;
}

std::vector<std::string> fragment_mismatches(const CatalogEntry& e, const CriterionReport& r) {
  std::vector<std::string> out;
  for (const auto& x : e.expected) {
    const Conclusion got = r.verdict(x.id).conclusion;
    if (got != x.conclusion)
      out.push_back(e.name + ": " + x.id + " expected " + std::string(to_string(x.conclusion)) + ", got " +
                    std::string(to_string(got)));
  }
  return out;
}

}  // namespace flrwkit
