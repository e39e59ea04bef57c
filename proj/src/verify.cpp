#include "flrwkit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "flrwkit/format.hpp"

namespace flrwkit {

namespace {

// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
class UnitSampler {
 public:
  explicit UnitSampler(std::uint64_t seed) : gen_(seed) {}
  double operator()() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double in(double lo, double hi) { return lo + (hi - lo) * (*this)(); }

 private:
  std::mt19937_64 gen_;
};

struct Tracker {
  VerifyReport& rep;

  void add(const std::map<std::string, double>& subs, double total, WorstPoint where) {
    ++rep.samples;
    for (const auto& [k, v] : subs) rep.sub_residuals[k] = std::max(rep.sub_residuals[k], v);
    if (total > rep.max_residual || rep.samples == 1) {
      rep.max_residual = std::max(rep.max_residual, total);
      rep.worst = std::move(where);
    }
  }
};

VerifyReport start(std::string id, const VerifyOptions& opt) {
  VerifyReport r;
  r.identity = std::move(id);
  r.tol = opt.tol;
  r.h = opt.h;
  r.seed = opt.seed;
  if (!(opt.h > 0.0) || !(opt.tol > 0.0)) throw Error(ErrorCode::domain, "verification needs h > 0 and tol > 0");
  if (opt.h > 1e-3)
    r.notes.push_back("step-size: h = " + format_double(opt.h) +
                      " is large; O(h^2) truncation error of central differences dominates (use h <= 1e-4)");
  return r;
}

void finish(VerifyReport& r) {
  r.pass = r.samples > 0 && r.max_residual <= r.tol;
  if (r.samples == 0) r.notes.push_back("no non-degenerate samples were tested");
}

double central(double fp, double fm, double h) { return (fp - fm) / (2.0 * h); }

}  // namespace

VerifyReport check_sph_pushforward(const SphericalChart& chart, const VerifyOptions& opt) {
  VerifyReport rep = start("sph_pushforward", opt);
  const Region& rg = chart.region();
  const double ht_max = opt.h * (1.0 + std::max(std::abs(rg.t_min), std::abs(rg.t_max)));
  const double hr_max = opt.h * (1.0 + std::max(std::abs(rg.r_min), std::abs(rg.r_max)));
  const double t_lo = rg.t_min + ht_max, t_hi = rg.t_max - ht_max;
  const double r_lo = rg.r_min + hr_max, r_hi = rg.r_max - hr_max;
  if (!(t_lo < t_hi) || !(r_lo < r_hi))
    throw Error(ErrorCode::sample_outside_region, "finite-difference step does not fit inside the chart region");
  UnitSampler u(opt.seed);
  Tracker tr{rep};
  const Branch b = chart.branch();
  const ScaleFactor& sf = chart.sf();
  for (std::size_t k = 0; k < opt.n_samples; ++k) {
    const double t = u.in(t_lo, t_hi), r = u.in(r_lo, r_hi);
    const double ht = opt.h * (1.0 + std::abs(t)), hr = opt.h * (1.0 + std::abs(r));
    const double Tt = central(chart.T(t + ht, r), chart.T(t - ht, r), ht);
    const double Tr = central(chart.T(t, r + hr), chart.T(t, r - hr), hr);
    const double Rt = central(R_of(b, sf, t + ht, r), R_of(b, sf, t - ht, r), ht);
    const double Rr = central(R_of(b, sf, t, r + hr), R_of(b, sf, t, r - hr), hr);
    const double F = chart.F(t, r), G = chart.G(t, r);
    const double s = radial_scale(b, sf, t);
    const double scale = std::max(1.0, s * s);
    const double e_tt = std::abs(-F * Tt * Tt + G * Rt * Rt + 1.0) / scale;
    const double e_tr = std::abs(-F * Tt * Tr + G * Rt * Rr) / scale;
    const double e_rr = std::abs(-F * Tr * Tr + G * Rr * Rr - s * s) / scale;
    tr.add({{"dt2", e_tt}, {"dtdr", e_tr}, {"dr2", e_rr}}, std::max({e_tt, e_tr, e_rr}), {{"t", "r"}, {t, r}});
  }
  finish(rep);
  return rep;
}

namespace {

struct AxiSample {
  double T, R, theta, hR, hth;
};

// Draws samples whose finite-difference stencils stay inside the domain;
// returns nullopt for samples near a degenerate locus.
class AxiSampler {
 public:
  AxiSampler(const AxiChart& chart, const VerifyOptions& opt, double th_lo, double th_hi)
      : chart_(chart), opt_(opt), u_(opt.seed), box_(chart.source().domain()), th_lo_(th_lo), th_hi_(th_hi) {
    const double hR = opt.h * (1.0 + std::max(std::abs(box_.R_min), std::abs(box_.R_max)));
    R_lo_ = box_.R_min + hR;
    R_hi_ = box_.R_max - hR;
    if (!(R_lo_ < R_hi_) || !(th_lo_ < th_hi_) || th_lo_ <= 0.0 || th_hi_ >= 3.14159265358979)
      throw Error(ErrorCode::sample_outside_region, "sampling box is empty after the finite-difference margin");
  }

  std::optional<AxiSample> next() {
    const double T = u_.in(box_.T_min, box_.T_max);
    const double R = u_.in(R_lo_, R_hi_);
    const double th = u_.in(th_lo_, th_hi_);
    const double G = chart_.source().G(T, R);
    const double c = std::cos(th), s = std::sin(th);
    if (std::abs(G * c * c + s * s) <= 10.0 * chart_.tol_exc()) return std::nullopt;
    return AxiSample{T, R, th, opt_.h * (1.0 + std::abs(R)), opt_.h * (1.0 + std::abs(th))};
  }

 private:
  const AxiChart& chart_;
  const VerifyOptions& opt_;
  UnitSampler u_;
  TRBox box_;
  double th_lo_, th_hi_;
  double R_lo_ = 0.0, R_hi_ = 0.0;
};

struct Partials {
  double zR, zth, rR, rth;
};

Partials fd_partials(const AxiChart& c, const AxiSample& p) {
  return {central(c.z(p.T, p.R + p.hR, p.theta), c.z(p.T, p.R - p.hR, p.theta), p.hR),
          central(c.z(p.T, p.R, p.theta + p.hth), c.z(p.T, p.R, p.theta - p.hth), p.hth),
          central(AxiChart::rho(p.R + p.hR, p.theta), AxiChart::rho(p.R - p.hR, p.theta), p.hR),
          central(AxiChart::rho(p.R, p.theta + p.hth), AxiChart::rho(p.R, p.theta - p.hth), p.hth)};
}

}  // namespace

VerifyReport check_axi_pushforward(const AxiChart& chart, const VerifyOptions& opt, double theta_lo,
                                   double theta_hi) {
  VerifyReport rep = start("axi_pushforward", opt);
  AxiSampler sampler(chart, opt, theta_lo, theta_hi);
  Tracker tr{rep};
  for (std::size_t k = 0; k < opt.n_samples; ++k) {
    const auto p = sampler.next();
    if (!p) {
      ++rep.skipped_degenerate;
      continue;
    }
    const AxiCoeffs c = chart.coeffs(p->T, p->R, p->theta);
    const double G = chart.source().G(p->T, p->R);
    const Partials d = fd_partials(chart, *p);
    const double R2 = p->R * p->R;
    const double rho = AxiChart::rho(p->R, p->theta), s = std::sin(p->theta);
    const double e1 = std::abs(c.B * d.zR * d.zR + c.C * d.rR * d.rR - G) / (1.0 + std::abs(G));
    const double e2 = std::abs(c.B * d.zth * d.zth + c.C * d.rth * d.rth - R2) / R2;
    const double e3 = std::abs(c.B * d.zR * d.zth + c.C * d.rR * d.rth) / R2;
    const double e4 = std::abs(rho * rho - R2 * s * s) / R2;
    tr.add({{"dR2", e1}, {"dtheta2", e2}, {"dRdtheta", e3}, {"rho2", e4}}, std::max({e1, e2, e3, e4}),
           {{"T", "R", "theta"}, {p->T, p->R, p->theta}});
  }
  finish(rep);
  return rep;
}

VerifyReport check_jacobian(const AxiChart& chart, const VerifyOptions& opt, double theta_lo, double theta_hi) {
  VerifyReport rep = start("jacobian", opt);
  AxiSampler sampler(chart, opt, theta_lo, theta_hi);
  Tracker tr{rep};
  for (std::size_t k = 0; k < opt.n_samples; ++k) {
    const auto p = sampler.next();
    if (!p) {
      ++rep.skipped_degenerate;
      continue;
    }
    const double J = chart.jacobian(p->T, p->R, p->theta);
    const Partials d = fd_partials(chart, *p);
    const double det = d.zR * d.rth - d.zth * d.rR;
    const double e = std::abs(J - det) / (1.0 + std::abs(J));
    tr.add({{"det", e}}, e, {{"T", "R", "theta"}, {p->T, p->R, p->theta}});
  }
  finish(rep);
  return rep;
}

}  // namespace flrwkit
