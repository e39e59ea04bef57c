#include "flrwkit/hermite_grid.hpp"

#include <algorithm>
#include <cmath>

#include "flrwkit/errors.hpp"
#include "flrwkit/format.hpp"

namespace flrwkit {

HermiteGrid::HermiteGrid(GridAxis x, GridAxis y) : x_(x), y_(y) {
  if (x_.n < 5 || y_.n < 5 || !(x_.lo < x_.hi) || !(y_.lo < y_.hi))
    throw Error(ErrorCode::domain, "grid needs at least 5 nodes per axis and a non-empty rectangle");
  const std::size_t n = x_.n * y_.n;
  f.assign(n, 0.0);
  fx.assign(n, 0.0);
  fy.assign(n, 0.0);
  fxy.assign(n, 0.0);
}

std::vector<double> fd4_derivative(const std::vector<double>& v, double h) {
  const std::size_t n = v.size();
  std::vector<double> d(n);
  if (n < 5) throw Error(ErrorCode::domain, "fourth-order differences need at least 5 samples");
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n) {
      d[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
    } else if (i < 2) {
      // Forward stencils exact for quartics.
      const double* p = &v[0];
      d[i] = i == 0 ? (-25.0 * p[0] + 48.0 * p[1] - 36.0 * p[2] + 16.0 * p[3] - 3.0 * p[4]) / (12.0 * h)
                    : (-3.0 * p[0] - 10.0 * p[1] + 18.0 * p[2] - 6.0 * p[3] + p[4]) / (12.0 * h);
    } else {
      const double* p = &v[n - 5];
      d[i] = i == n - 1 ? (3.0 * p[0] - 16.0 * p[1] + 36.0 * p[2] - 48.0 * p[3] + 25.0 * p[4]) / (12.0 * h)
                        : (-p[0] + 6.0 * p[1] - 18.0 * p[2] + 10.0 * p[3] + 3.0 * p[4]) / (12.0 * h);
    }
  }
  return d;
}

void HermiteGrid::mixed_from_fy() {
  std::vector<double> col(x_.n);
  for (std::size_t j = 0; j < y_.n; ++j) {
    for (std::size_t i = 0; i < x_.n; ++i) col[i] = fy[index(i, j)];
    const auto d = fd4_derivative(col, x_.step());
    for (std::size_t i = 0; i < x_.n; ++i) fxy[index(i, j)] = d[i];
  }
}

void HermiteGrid::derivatives_from_values() {
  std::vector<double> col(x_.n), row(y_.n);
  for (std::size_t j = 0; j < y_.n; ++j) {
    for (std::size_t i = 0; i < x_.n; ++i) col[i] = f[index(i, j)];
    const auto d = fd4_derivative(col, x_.step());
    for (std::size_t i = 0; i < x_.n; ++i) fx[index(i, j)] = d[i];
  }
  for (std::size_t i = 0; i < x_.n; ++i) {
    for (std::size_t j = 0; j < y_.n; ++j) row[j] = f[index(i, j)];
    const auto d = fd4_derivative(row, y_.step());
    for (std::size_t j = 0; j < y_.n; ++j) fy[index(i, j)] = d[j];
  }
  mixed_from_fy();
}

bool HermiteGrid::contains(double x, double y) const {
  return x >= x_.lo && x <= x_.hi && y >= y_.lo && y <= y_.hi;
}

namespace {

struct Basis {
  double h0, h1, k0, k1;      // values
  double dh0, dh1, dk0, dk1;  // derivatives in the unit variable
};

Basis basis(double u) {
  const double u2 = u * u, u3 = u2 * u;
  return {2 * u3 - 3 * u2 + 1, -2 * u3 + 3 * u2, u3 - 2 * u2 + u, u3 - u2,
          6 * u2 - 6 * u,      -6 * u2 + 6 * u,  3 * u2 - 4 * u + 1, 3 * u2 - 2 * u};
}

std::pair<std::size_t, double> locate_cell(const GridAxis& a, double x) {
  const double s = (x - a.lo) / a.step();
  std::size_t i = static_cast<std::size_t>(std::clamp(std::floor(s), 0.0, static_cast<double>(a.n - 2)));
  return {i, std::clamp(s - static_cast<double>(i), 0.0, 1.0)};
}

}  // namespace

std::array<double, 3> HermiteGrid::eval(double x, double y) const {
  if (!contains(x, y))
    throw Error(ErrorCode::sample_outside_region, "query (" + format_double(x) + ", " + format_double(y) +
                                                      ") lies outside the grid rectangle");
  const auto [i, u] = locate_cell(x_, x);
  const auto [j, v] = locate_cell(y_, y);
  const double hx = x_.step(), hy = y_.step();
  const Basis bu = basis(u), bv = basis(v);
  const double Hu[2] = {bu.h0, bu.h1}, Ku[2] = {bu.k0 * hx, bu.k1 * hx};
  const double dHu[2] = {bu.dh0 / hx, bu.dh1 / hx}, dKu[2] = {bu.dk0, bu.dk1};
  const double Hv[2] = {bv.h0, bv.h1}, Kv[2] = {bv.k0 * hy, bv.k1 * hy};
  const double dHv[2] = {bv.dh0 / hy, bv.dh1 / hy}, dKv[2] = {bv.dk0, bv.dk1};
  double val = 0.0, dx = 0.0, dy = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const std::size_t k = index(i + a, j + b);
      val += Hu[a] * Hv[b] * f[k] + Ku[a] * Hv[b] * fx[k] + Hu[a] * Kv[b] * fy[k] + Ku[a] * Kv[b] * fxy[k];
      dx += dHu[a] * Hv[b] * f[k] + dKu[a] * Hv[b] * fx[k] + dHu[a] * Kv[b] * fy[k] + dKu[a] * Kv[b] * fxy[k];
      dy += Hu[a] * dHv[b] * f[k] + Ku[a] * dHv[b] * fx[k] + Hu[a] * dKv[b] * fy[k] + Ku[a] * dKv[b] * fxy[k];
    }
  }
  return {val, dx, dy};
}

}  // namespace flrwkit
