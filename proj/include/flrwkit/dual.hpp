#pragma once

#include <cmath>
#include <type_traits>

namespace flrwkit {

/// Forward-mode dual number value + deriv*eps with eps^2 = 0.
///
/// The component type may itself be a Dual, which nests derivatives: a
/// Dual<Dual<double>> carries a value, one derivative in each of two
/// directions, and their mixed second derivative.
template <class T>
struct Dual {
  T value{};
  T deriv{};

  constexpr Dual() = default;
  constexpr Dual(T v) : value(v), deriv{} {}  // NOLINT(google-explicit-constructor)
  constexpr Dual(T v, T d) : value(v), deriv(d) {}

  friend constexpr Dual operator+(const Dual& a, const Dual& b) {
    return {a.value + b.value, a.deriv + b.deriv};
  }
  friend constexpr Dual operator-(const Dual& a, const Dual& b) {
    return {a.value - b.value, a.deriv - b.deriv};
  }
  friend constexpr Dual operator*(const Dual& a, const Dual& b) {
    return {a.value * b.value, a.deriv * b.value + a.value * b.deriv};
  }
  friend constexpr Dual operator/(const Dual& a, const Dual& b) {
    return {a.value / b.value,
            (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
  }
  friend constexpr Dual operator-(const Dual& a) { return {-a.value, -a.deriv}; }

  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator-=(const Dual& o) { return *this = *this - o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Innermost scalar value, peeling every Dual layer.
inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) {
  return primal(x.value);
}

/// True when every component at every nesting level is finite.
inline bool all_finite(double x) { return std::isfinite(x); }
template <class T>
bool all_finite(const Dual<T>& x) {
  return all_finite(x.value) && all_finite(x.deriv);
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  using std::exp;
  const T e = exp(x.value);
  return {e, x.deriv * e};
}
template <class T>
Dual<T> log(const Dual<T>& x) {
  using std::log;
  return {log(x.value), x.deriv / x.value};
}
template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.value);
  return {s, x.deriv / (T(2.0) * s)};
}
template <class T>
Dual<T> sin(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {sin(x.value), x.deriv * cos(x.value)};
}
template <class T>
Dual<T> cos(const Dual<T>& x) {
  using std::cos;
  using std::sin;
  return {cos(x.value), -(x.deriv * sin(x.value))};
}
template <class T>
Dual<T> sinh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {sinh(x.value), x.deriv * cosh(x.value)};
}
template <class T>
Dual<T> cosh(const Dual<T>& x) {
  using std::cosh;
  using std::sinh;
  return {cosh(x.value), x.deriv * sinh(x.value)};
}
template <class T>
Dual<T> tanh(const Dual<T>& x) {
  using std::tanh;
  const T th = tanh(x.value);
  return {th, x.deriv * (T(1.0) - th * th)};
}

// x^k for a constant real exponent.
template <class T>
Dual<T> pow(const Dual<T>& x, double k) {
  using std::pow;
  if (k == 0.0) return {pow(x.value, 0.0), T(0.0)};
  return {pow(x.value, k), x.deriv * (T(k) * pow(x.value, k - 1.0))};
}

}  // namespace flrwkit
