#pragma once

// Stationary electromagnetic backgrounds with analytic potential, field
// tensor and first field gradients.
//
// Conventions: A^0 is the scalar potential (A_0 = -A^0) and E_i = -d_i A^0,
// B = curl A. The field tensor is stored as F^{mu nu} with F^{0i} = E_i and
// F^{ij} = eps_{ijk} B_k. Evaluators are templates so the same code yields
// exact derivatives when fed dual numbers.

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "ncspin/dual.hpp"
#include "ncspin/errors.hpp"
#include "ncspin/minkowski.hpp"

namespace ncspin {

enum class BackgroundKind { zero, uniform_e, uniform_b, crossed, coulomb };

std::string_view to_string(BackgroundKind kind);
BackgroundKind parse_background_kind(std::string_view name);

/// Static gauge function chi = k.x + x.M.x / 2, added as A^i += d_i chi.
struct GaugeShift {
  Vec3 linear{};
  std::array<Vec3, 3> quadratic{};  // symmetric
};

struct BackgroundParams {
  Vec3 E{};
  Vec3 B{};
  double q = 0.0;        // Coulomb source charge
  double r_min = 1e-6;   // evaluators refuse points closer to the source
  GaugeShift gauge{};
};

class FieldBackground {
 public:
  FieldBackground() = default;
  FieldBackground(BackgroundKind kind, const BackgroundParams& params);

  BackgroundKind kind() const { return kind_; }
  const BackgroundParams& params() const { return params_; }
  /// Human-readable description of the gauge in which A is supplied.
  std::string gauge_description() const;

  /// True when A^mu is polynomial (at most linear) in x.
  bool is_polynomial() const { return kind_ != BackgroundKind::coulomb; }

  template <class T>
  BasicFourVector<T> potential(const BasicFourVector<T>& x) const;

  template <class T>
  BasicAntisymTensor<T> field(const BasicFourVector<T>& x) const;

  /// d_lambda F^{mu nu}, lambda = 0..3 (lambda = 0 vanishes: fields are static).
  std::array<AntisymTensor4, 4> field_gradient(const FourVector& x) const;

 private:
  template <class T>
  void check_domain(const BasicFourVector<T>& x) const;

  BackgroundKind kind_ = BackgroundKind::zero;
  BackgroundParams params_{};
};

FieldBackground make_background(BackgroundKind kind, const BackgroundParams& params);

/// E_i = -F_{0i} = F^{0i}, B_i = eps_{ijk} F_{jk} / 2.
std::pair<Vec3, Vec3> extract_EB(const AntisymTensor4& F);

// ---------------------------------------------------------------------------

template <class T>
void FieldBackground::check_domain(const BasicFourVector<T>& x) const {
  if (kind_ != BackgroundKind::coulomb) return;
  const double r2 = value_of(x[1]) * value_of(x[1]) + value_of(x[2]) * value_of(x[2]) +
                    value_of(x[3]) * value_of(x[3]);
  if (!(r2 >= params_.r_min * params_.r_min))
    throw DomainError("point inside the Coulomb core r < r_min");
}

template <class T>
BasicFourVector<T> FieldBackground::potential(const BasicFourVector<T>& x) const {
  check_domain(x);
  BasicFourVector<T> A;
  const Vec3T<T> r = x.spatial();
  switch (kind_) {
    case BackgroundKind::zero:
      break;
    case BackgroundKind::uniform_e:
    case BackgroundKind::uniform_b:
    case BackgroundKind::crossed: {
      const Vec3& E = params_.E;
      const Vec3& B = params_.B;
      A[0] = -(E[0] * r[0] + E[1] * r[1] + E[2] * r[2]);
      A[1] = 0.5 * (B[1] * r[2] - B[2] * r[1]);
      A[2] = 0.5 * (B[2] * r[0] - B[0] * r[2]);
      A[3] = 0.5 * (B[0] * r[1] - B[1] * r[0]);
      break;
    }
    case BackgroundKind::coulomb: {
      using std::sqrt;
      A[0] = params_.q / sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
      break;
    }
  }
  const GaugeShift& g = params_.gauge;
  for (std::size_t i = 0; i < 3; ++i) {
    T grad = T(g.linear[i]);
    for (std::size_t j = 0; j < 3; ++j) grad += g.quadratic[i][j] * r[j];
    A[i + 1] += grad;
  }
  return A;
}

template <class T>
BasicAntisymTensor<T> FieldBackground::field(const BasicFourVector<T>& x) const {
  check_domain(x);
  switch (kind_) {
    case BackgroundKind::zero:
      return {};
    case BackgroundKind::uniform_e:
    case BackgroundKind::uniform_b:
    case BackgroundKind::crossed: {
      const Vec3T<T> E{T(params_.E[0]), T(params_.E[1]), T(params_.E[2])};
      const Vec3T<T> B{T(params_.B[0]), T(params_.B[1]), T(params_.B[2])};
      return BasicAntisymTensor<T>::from_EB(E, B);
    }
    case BackgroundKind::coulomb: {
      using std::sqrt;
      const Vec3T<T> r = x.spatial();
      const T r2 = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
      const T inv_r3 = T(1.0) / (r2 * sqrt(r2));
      const Vec3T<T> E{params_.q * r[0] * inv_r3, params_.q * r[1] * inv_r3,
                       params_.q * r[2] * inv_r3};
      return BasicAntisymTensor<T>::from_EB(E, Vec3T<T>{T(0.0), T(0.0), T(0.0)});
    }
  }
  return {};
}

}  // namespace ncspin
