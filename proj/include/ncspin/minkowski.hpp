#pragma once

// Four-vectors and antisymmetric rank-2 tensors in flat space with metric
// signature (-,+,+,+). Every tensor is stored with upper indices; lowering is
// done explicitly through `eta`.

#include <array>
#include <cstddef>

namespace ncspin {

template <class T>
using Vec3T = std::array<T, 3>;
using Vec3 = Vec3T<double>;

/// Diagonal of the Minkowski metric.
constexpr double eta(std::size_t mu) { return mu == 0 ? -1.0 : 1.0; }

/// Levi-Civita symbol on {0,1,2}.
constexpr int levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0;
  return ((i + 1) % 3 == j) ? 1 : -1;
}

template <class T>
class BasicFourVector {
 public:
  constexpr BasicFourVector() : c_{T(0.0), T(0.0), T(0.0), T(0.0)} {}
  constexpr BasicFourVector(T t, T x, T y, T z) : c_{t, x, y, z} {}
  static BasicFourVector from_parts(const T& time, const Vec3T<T>& space) {
    return {time, space[0], space[1], space[2]};
  }

  T& operator[](std::size_t mu) { return c_[mu]; }
  const T& operator[](std::size_t mu) const { return c_[mu]; }

  Vec3T<T> spatial() const { return {c_[1], c_[2], c_[3]}; }

  /// Covariant component v_mu.
  T lower(std::size_t mu) const { return mu == 0 ? T(-c_[0]) : c_[mu]; }

  BasicFourVector& operator+=(const BasicFourVector& o) {
    for (std::size_t mu = 0; mu < 4; ++mu) c_[mu] += o.c_[mu];
    return *this;
  }
  BasicFourVector& operator-=(const BasicFourVector& o) {
    for (std::size_t mu = 0; mu < 4; ++mu) c_[mu] -= o.c_[mu];
    return *this;
  }
  template <class S>
  BasicFourVector& operator*=(const S& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend BasicFourVector operator+(BasicFourVector a, const BasicFourVector& b) { return a += b; }
  friend BasicFourVector operator-(BasicFourVector a, const BasicFourVector& b) { return a -= b; }
  friend BasicFourVector operator*(BasicFourVector a, const T& s) { return a *= s; }
  friend BasicFourVector operator*(const T& s, BasicFourVector a) { return a *= s; }

  const std::array<T, 4>& components() const { return c_; }

 private:
  std::array<T, 4> c_;
};

using FourVector = BasicFourVector<double>;

/// Fully covariant 4x4 array T_{mu nu}; only produced by `lower_indices`.
template <class T>
using LoweredMatrix = std::array<std::array<T, 4>, 4>;

/// Antisymmetric tensor T^{mu nu}. Antisymmetry is enforced by `set`.
template <class T>
class BasicAntisymTensor {
 public:
  BasicAntisymTensor() { m_.fill(T(0.0)); }

  const T& operator()(std::size_t mu, std::size_t nu) const { return m_[4 * mu + nu]; }

  void set(std::size_t mu, std::size_t nu, const T& value) {
    if (mu == nu) return;
    m_[4 * mu + nu] = value;
    m_[4 * nu + mu] = -value;
  }

  /// F^{0i} = E_i, F^{ij} = eps_{ijk} B_k (so F_{0i} = -E_i).
  static BasicAntisymTensor from_EB(const Vec3T<T>& E, const Vec3T<T>& B) {
    BasicAntisymTensor f;
    for (std::size_t i = 0; i < 3; ++i) f.set(0, i + 1, E[i]);
    f.set(1, 2, B[2]);
    f.set(2, 3, B[0]);
    f.set(3, 1, B[1]);
    return f;
  }

  /// S^{i0} = D^i, S^{ij} = 2 eps_{ijk} S_k.
  static BasicAntisymTensor from_spin(const Vec3T<T>& S, const Vec3T<T>& D) {
    BasicAntisymTensor s;
    for (std::size_t i = 0; i < 3; ++i) s.set(i + 1, 0, D[i]);
    s.set(1, 2, T(2.0) * S[2]);
    s.set(2, 3, T(2.0) * S[0]);
    s.set(3, 1, T(2.0) * S[1]);
    return s;
  }

  /// S_k = (1/4) eps_{ijk} S^{ij}.
  Vec3T<T> spin_vector() const {
    return {T(0.5) * (*this)(2, 3), T(0.5) * (*this)(3, 1), T(0.5) * (*this)(1, 2)};
  }
  /// D^i = S^{i0}.
  Vec3T<T> dipole() const { return {(*this)(1, 0), (*this)(2, 0), (*this)(3, 0)}; }

 private:
  std::array<T, 16> m_;
};

using AntisymTensor4 = BasicAntisymTensor<double>;

template <class T>
T minkowski_dot(const BasicFourVector<T>& u, const BasicFourVector<T>& v) {
  return -(u[0] * v[0]) + u[1] * v[1] + u[2] * v[2] + u[3] * v[3];
}

/// F_{mu nu} S^{mu nu}.
template <class T>
T contract_FS(const BasicAntisymTensor<T>& F, const BasicAntisymTensor<T>& S) {
  T sum(0.0);
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = mu + 1; nu < 4; ++nu)
      sum += T(2.0 * eta(mu) * eta(nu)) * F(mu, nu) * S(mu, nu);
  return sum;
}

/// (F v)^mu = F^mu_nu v^nu.
template <class T>
BasicFourVector<T> tensor_vector(const BasicAntisymTensor<T>& F, const BasicFourVector<T>& v) {
  BasicFourVector<T> out;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    T acc(0.0);
    for (std::size_t nu = 0; nu < 4; ++nu) acc += F(mu, nu) * v.lower(nu);
    out[mu] = acc;
  }
  return out;
}

/// (F S)^{mu nu} = F^mu_alpha S^{alpha nu}; not antisymmetric in general.
template <class T>
std::array<std::array<T, 4>, 4> tensor_product(const BasicAntisymTensor<T>& F,
                                               const BasicAntisymTensor<T>& S) {
  std::array<std::array<T, 4>, 4> out{};
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      T acc(0.0);
      for (std::size_t a = 0; a < 4; ++a) acc += T(eta(a)) * F(mu, a) * S(a, nu);
      out[mu][nu] = acc;
    }
  return out;
}

template <class T>
LoweredMatrix<T> lower_indices(const BasicAntisymTensor<T>& t) {
  LoweredMatrix<T> out{};
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) out[mu][nu] = T(eta(mu) * eta(nu)) * t(mu, nu);
  return out;
}

template <class T>
BasicAntisymTensor<T> raise_indices(const LoweredMatrix<T>& low) {
  BasicAntisymTensor<T> out;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = mu + 1; nu < 4; ++nu) out.set(mu, nu, T(eta(mu) * eta(nu)) * low[mu][nu]);
  return out;
}

template <class T>
T dot3(const Vec3T<T>& a, const Vec3T<T>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
Vec3T<T> cross3(const Vec3T<T>& a, const Vec3T<T>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace ncspin
