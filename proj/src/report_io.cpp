#include "flrwkit/report_io.hpp"

#include <cmath>

#include <json.hpp>

#include "flrwkit/catalog.hpp"
#include "flrwkit/format.hpp"

namespace flrwkit {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json spec_json(const SpacetimeSpec& spec) {
  Json s;
  s["K"] = spec.K;
  s["d"] = spec.d;
  s["a"] = spec.sf.text();
  s["interval"] = Json::array({number(spec.sf.t_inf()), number(spec.sf.t_sup())});
  return s;
}

Json limit_json(const LimitDiag& d) {
  Json j;
  j["kind"] = std::string(to_string(d.kind));
  if (d.kind == LimitKind::finite) j["value"] = number(d.value);
  j["label"] = d.label();
  j["samples"] = d.samples.size();
  if (!d.samples.empty()) {
    j["last_t"] = number(d.samples.back().first);
    j["last_value"] = number(d.samples.back().second);
  }
  j["note"] = d.note;
  return j;
}

Json base(const char* kind) {
  Json j;
  j["kind"] = kind;
  j["version"] = kVersion;
  return j;
}

// Row writer shared by the CSV exports.
class CsvRow {
 public:
  explicit CsvRow(std::ostream& os) : os_(os) {}
  ~CsvRow() { os_ << '\n'; }
  CsvRow& operator<<(double v) { return cell(format_double(v)); }
  CsvRow& operator<<(const std::string& s) { return cell(s); }
  CsvRow& operator<<(std::string_view s) { return cell(std::string(s)); }
  CsvRow& operator<<(const char* s) { return cell(s); }

 private:
  CsvRow& cell(const std::string& s) {
    if (!first_) os_ << ',';
    first_ = false;
    os_ << s;
    return *this;
  }
  std::ostream& os_;
  bool first_ = true;
};

double node(double lo, double hi, std::size_t n, std::size_t i) {
  if (n == 1) return 0.5 * (lo + hi);
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

std::string classify_json(const CriterionReport& report) {
  Json j = base("classify");
  j["spec"] = spec_json(report.spec);
  j["anchor"] = report.anchor;
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json jv;
    jv["id"] = v.id;
    jv["conclusion"] = std::string(to_string(v.conclusion));
    jv["text"] = v.text;
    jv["note"] = v.note;
    Json hyps = Json::array();
    for (const auto& h : v.hypotheses) {
      Json jh;
      jh["name"] = h.name;
      jh["status"] = std::string(to_string(h.status));
      jh["evidence"] = h.evidence;
      hyps.push_back(std::move(jh));
    }
    jv["hypotheses"] = std::move(hyps);
    verdicts.push_back(std::move(jv));
  }
  j["verdicts"] = std::move(verdicts);
  j["table_row"] = report.table_row;
  return dump(j);
}

std::string probe_json(const SpacetimeSpec& spec, const ProbeSettings& settings, const ProbeResult& result,
                       const WitnessResult& witness) {
  Json j = base("probe");
  j["spec"] = spec_json(spec);
  const CurveSpec& c = settings.curve;
  Json curve;
  curve["kind"] = std::string(to_string(c.kind));
  switch (c.kind) {
    case CurveKind::constant_R: curve["R0"] = number(c.R0); break;
    case CurveKind::near_null_ingoing:
      curve["kappa"] = number(c.kappa);
      curve["r1"] = number(c.r1);
      curve["t1"] = number(c.t1);
      break;
    case CurveKind::custom: curve["r_of_t"] = c.r_of_t; break;
  }
  curve["theta"] = number(c.theta);
  j["curve"] = std::move(curve);
  Json limits;
  limits["R"] = limit_json(result.R);
  limits["r"] = limit_json(result.r);
  limits["G"] = limit_json(result.G);
  limits["C"] = limit_json(result.C);
  limits["r2ap2"] = limit_json(result.r2ap2);
  j["limits"] = std::move(limits);
  j["timelike_fraction"] = number(result.timelike_fraction);
  j["trace_samples"] = result.trace.size();
  j["notes"] = result.notes;
  Json w;
  w["R0"] = number(c.R0);
  w["theta"] = number(c.theta);
  w["epsilon"] = number(settings.epsilon);
  w["found"] = witness.found;
  if (witness.found) {
    w["t_star"] = number(witness.t_star);
    w["G"] = number(witness.G);
    w["C"] = number(witness.C);
  }
  w["hypotheses_established"] = witness.hypotheses_established;
  w["note"] = witness.note;
  j["witness"] = std::move(w);
  return dump(j);
}

std::string verify_json(const SpacetimeSpec& spec, const std::vector<VerifyReport>& reports) {
  Json j = base("verify");
  j["spec"] = spec_json(spec);
  bool pass = !reports.empty();
  Json list = Json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    Json jr;
    jr["identity"] = r.identity;
    jr["pass"] = r.pass;
    jr["samples"] = r.samples;
    jr["skipped_degenerate"] = r.skipped_degenerate;
    jr["max_residual"] = number(r.max_residual);
    jr["tol"] = number(r.tol);
    jr["h"] = number(r.h);
    jr["seed"] = r.seed;
    Json worst = Json::object();
    for (std::size_t k = 0; k < r.worst.names.size() && k < r.worst.coords.size(); ++k)
      worst[r.worst.names[k]] = number(r.worst.coords[k]);
    jr["worst"] = std::move(worst);
    Json subs = Json::object();
    for (const auto& [name, v] : r.sub_residuals) subs[name] = number(v);
    jr["sub_residuals"] = std::move(subs);
    jr["notes"] = r.notes;
    list.push_back(std::move(jr));
  }
  j["pass"] = pass;
  j["reports"] = std::move(list);
  return dump(j);
}

void write_spherical_csv(std::ostream& os, const SphericalChart& chart, std::size_t out_nt, std::size_t out_nr) {
  CsvRow(os) << "t" << "r" << "T" << "R" << "F" << "G" << "excluded";
  const Region& rg = chart.region();
  for (std::size_t i = 0; i < out_nt; ++i) {
    const double t = node(rg.t_min, rg.t_max, out_nt, i);
    for (std::size_t j = 0; j < out_nr; ++j) {
      const double r = node(rg.r_min, rg.r_max, out_nr, j);
      const auto ex = excluded_set(chart.branch(), chart.sf(), t, r, chart.tol_exc());
      CsvRow row(os);
      row << t << r << chart.T(t, r) << chart.R(t, r) << chart.F(t, r);
      if (ex) row << "" << "1";
      else row << chart.G(t, r) << "0";
    }
  }
}

void write_axi_csv(std::ostream& os, const AxiChart& chart, const AxiSettings& s) {
  CsvRow(os) << "T" << "R" << "theta" << "z" << "rho" << "A" << "B" << "C" << "J" << "sign_case" << "degeneracy";
  const TRBox box = chart.source().domain();
  const double R_lo = box.R_min, R_hi = box.R_max;
  for (std::size_t a = 0; a < s.n_T; ++a) {
    const double T = node(box.T_min, box.T_max, s.n_T, a);
    for (std::size_t b = 0; b < s.n_R; ++b) {
      const double R = node(R_lo, R_hi, s.n_R, b);
      for (std::size_t c = 0; c < s.n_theta; ++c) {
        const double th = node(s.theta_min, s.theta_max, s.n_theta, c);
        const DegeneracyDiag dg = chart.degeneracy_at(T, R, th);
        CsvRow row(os);
        row << T << R << th << chart.z(T, R, th) << AxiChart::rho(R, th);
        if (dg.kind == DegeneracyKind::none) {
          const AxiCoeffs k = chart.coeffs(T, R, th);
          row << k.A << k.B << k.C << chart.jacobian(T, R, th) << to_string(chart.sign_case_at(T, R, th));
        } else {
          row << "" << "" << "" << "" << to_string(SignCase::degenerate);
        }
        row << to_string(dg.kind);
      }
    }
  }
}

void write_probe_csv(std::ostream& os, const ProbeResult& result) {
  CsvRow(os) << "t" << "r" << "R" << "G" << "C" << "tangent_norm";
  for (const auto& p : result.trace) CsvRow(os) << p.t << p.r << p.R << p.G << p.C << p.tangent_norm;
}

void write_catalog_list(std::ostream& os) {
  for (const auto& name : catalog_names()) os << name << '\t' << catalog_get(name).provenance << '\n';
}

}  // namespace flrwkit
