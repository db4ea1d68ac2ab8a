#pragma once

// Forward-mode dual numbers carrying an exact gradient with respect to the
// sixteen phase-space coordinates.

#include <array>
#include <cmath>
#include <cstddef>

namespace ncspin {

inline constexpr std::size_t kPhaseDim = 16;

struct Dual {
  double v = 0.0;
  std::array<double, kPhaseDim> d{};

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Dual variable(double value, std::size_t index) {
    Dual out(value);
    out.d[index] = 1.0;
    return out;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t k = 0; k < kPhaseDim; ++k) d[k] += o.d[k];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t k = 0; k < kPhaseDim; ++k) d[k] -= o.d[k];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (std::size_t k = 0; k < kPhaseDim; ++k) d[k] = d[k] * o.v + v * o.d[k];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.v;
    const double q = v * inv;
    for (std::size_t k = 0; k < kPhaseDim; ++k) d[k] = (d[k] - q * o.d[k]) * inv;
    v = q;
    return *this;
  }
  Dual& operator*=(double s) {
    v *= s;
    for (auto& x : d) x *= s;
    return *this;
  }
};

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator+(Dual a, double b) { a.v += b; return a; }
inline Dual operator+(double b, Dual a) { a.v += b; return a; }
inline Dual operator-(Dual a, double b) { a.v -= b; return a; }
inline Dual operator-(double b, const Dual& a) {
  Dual out = a;
  out *= -1.0;
  out.v += b;
  return out;
}
inline Dual operator*(Dual a, double s) { return a *= s; }
inline Dual operator*(double s, Dual a) { return a *= s; }
inline Dual operator/(Dual a, double s) { return a *= (1.0 / s); }
inline Dual operator/(double s, const Dual& a) { return Dual(s) / a; }
inline Dual operator-(Dual a) { return a *= -1.0; }

inline Dual sqrt(const Dual& a) {
  const double r = std::sqrt(a.v);
  Dual out(r);
  const double f = 0.5 / r;
  for (std::size_t k = 0; k < kPhaseDim; ++k) out.d[k] = f * a.d[k];
  return out;
}

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

}  // namespace ncspin
