#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace flrwkit {

/// Uniform rectangular grid on [x0, x1] x [y0, y1] with nx * ny nodes.
struct GridAxis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 2;

  double step() const { return (hi - lo) / static_cast<double>(n - 1); }
  double node(std::size_t i) const {
    return i + 1 == n ? hi : lo + step() * static_cast<double>(i);
  }
};

/// Bicubic Hermite interpolant from nodal values, first partials and the
/// mixed partial. C1 across cells; queries outside the rectangle throw
/// Error{sample_outside_region}.
class HermiteGrid {
 public:
  HermiteGrid() = default;
  HermiteGrid(GridAxis x, GridAxis y);

  const GridAxis& x_axis() const { return x_; }
  const GridAxis& y_axis() const { return y_; }

  std::size_t index(std::size_t i, std::size_t j) const { return i * y_.n + j; }

  std::vector<double> f, fx, fy, fxy;

  /// Fills the mixed partial by fourth-order differences of fy along x.
  void mixed_from_fy();
  /// Fills fx, fy and fxy from f by fourth-order differences.
  void derivatives_from_values();

  bool contains(double x, double y) const;

  /// {value, d/dx, d/dy}.
  std::array<double, 3> eval(double x, double y) const;
  double value(double x, double y) const { return eval(x, y)[0]; }

 private:
  GridAxis x_;
  GridAxis y_;
};

/// Fourth-order first derivative of equally spaced samples v[0..n-1] (n >= 5)
/// at every node, with one-sided stencils at the ends.
std::vector<double> fd4_derivative(const std::vector<double>& v, double h);

}  // namespace flrwkit
