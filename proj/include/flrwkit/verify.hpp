#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flrwkit/axi_chart.hpp"
#include "flrwkit/sph_chart.hpp"

namespace flrwkit {

struct VerifyOptions {
  std::size_t n_samples = 200;
  /// Relative finite-difference step: h_x = h * (1 + |x|) per coordinate.
  double h = 1e-5;
  double tol = 1e-5;
  std::uint64_t seed = 42;
};

struct WorstPoint {
  std::vector<std::string> names;
  std::vector<double> coords;
};

struct VerifyReport {
  std::string identity;
  std::size_t samples = 0;  // samples actually tested
  std::size_t skipped_degenerate = 0;
  double max_residual = 0.0;
  double tol = 0.0;
  double h = 0.0;
  std::uint64_t seed = 0;
  WorstPoint worst;
  std::map<std::string, double> sub_residuals;  // per sub-identity maxima
  std::vector<std::string> notes;
  bool pass = false;  // max_residual <= tol
};

/// Pulls -F dT^2 + G dR^2 back to (t, r) with central differences of T and R
/// and compares against (-1, 0, s^2) for (dt^2, dt dr, dr^2). Residuals are
/// absolute, scaled by max(1, s^2).
VerifyReport check_sph_pushforward(const SphericalChart& chart, const VerifyOptions& opt);

/// Samples (T, R, theta) in the source domain with theta in [theta_lo, theta_hi]
/// and checks B z_R^2 + C rho_R^2 = G, B z_theta^2 + C rho_theta^2 = R^2,
/// B z_R z_theta + C rho_R rho_theta = 0 and rho^2 = R^2 sin^2 with central
/// differences of z and rho. Points within 10 tol_exc of a degenerate locus
/// are skipped and counted.
VerifyReport check_axi_pushforward(const AxiChart& chart, const VerifyOptions& opt, double theta_lo = 0.1,
                                   double theta_hi = 3.0415926535897931);

/// |J_formula - det(FD partials of (z, rho) w.r.t. (R, theta))| / (1 + |J|).
VerifyReport check_jacobian(const AxiChart& chart, const VerifyOptions& opt, double theta_lo = 0.1,
                            double theta_hi = 3.0415926535897931);

}  // namespace flrwkit
