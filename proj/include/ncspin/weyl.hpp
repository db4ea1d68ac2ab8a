#pragma once

// Normal-ordered Weyl algebra in three dimensions with 2x2 complex matrix
// coefficients. Every monomial is stored as x1^a1 x2^a2 x3^a3 p1^b1 p2^b2 p3^b3
// (positions to the left) times hbar^h c^-k; hbar and 1/c stay symbolic, all
// other parameters enter the numeric coefficients.

#include <array>
#include <complex>
#include <compare>
#include <map>
#include <string>

namespace ncspin {

using complex = std::complex<double>;

/// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<complex, 4> m{};

  static Mat2 identity();
  /// Pauli matrix sigma^k, k = 1..3; k = 0 gives the identity.
  static Mat2 pauli(int k);

  complex& operator()(int r, int c) { return m[2 * r + c]; }
  const complex& operator()(int r, int c) const { return m[2 * r + c]; }
  bool is_zero() const;
  double max_abs() const;
  Mat2 dagger() const;
  /// Component along sigma^k: tr(M sigma^k) / 2.
  complex pauli_component(int k) const;

  friend Mat2 operator+(Mat2 a, const Mat2& b);
  friend Mat2 operator-(Mat2 a, const Mat2& b);
  friend Mat2 operator*(const Mat2& a, const Mat2& b);
  friend Mat2 operator*(complex s, Mat2 a);
  friend bool operator==(const Mat2& a, const Mat2& b) = default;
};

struct Monomial {
  std::array<int, 3> x{};  // position exponents
  std::array<int, 3> p{};  // momentum exponents
  int hbar = 0;
  int cinv = 0;            // power of 1/c (negative for positive powers of c)

  auto operator<=>(const Monomial&) const = default;
  std::string str() const;
};

class WeylElement {
 public:
  using Terms = std::map<Monomial, Mat2>;

  WeylElement() = default;
  static WeylElement scalar(complex value, int hbar = 0, int cinv = 0);
  static WeylElement matrix(const Mat2& value, int hbar = 0, int cinv = 0);
  static WeylElement monomial(const Monomial& mono, const Mat2& coef);
  /// Position operator x_i, i = 1..3.
  static WeylElement x(int i);
  /// Canonical momentum operator p_i, i = 1..3.
  static WeylElement p(int i);
  static WeylElement sigma(int k);

  const Terms& terms() const { return terms_; }
  bool is_zero(double tol = 0.0) const;
  double max_abs() const;

  WeylElement& operator+=(const WeylElement& o);
  WeylElement& operator-=(const WeylElement& o);
  WeylElement& operator*=(complex s);

  friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
  friend WeylElement operator-(WeylElement a) { return a *= -1.0; }
  friend WeylElement operator*(complex s, WeylElement a) { return a *= s; }
  friend WeylElement operator*(WeylElement a, complex s) { return a *= s; }
  /// Operator product with exact re-ordering into normal order.
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);

  /// Multiplies every term by hbar^h c^-k.
  WeylElement scaled(int hbar, int cinv) const;
  /// Formal adjoint: dagger of the coefficient, reversed operator order,
  /// re-normal-ordered.
  WeylElement adjoint() const;

  /// Terms with exactly this power of 1/c (resp. hbar).
  WeylElement cinv_part(int k) const;
  WeylElement hbar_part(int h) const;
  /// Drops terms beyond 1/c^k.
  WeylElement truncated(int max_cinv) const;
  /// Smallest and largest power of 1/c with a non-zero term (0 if empty).
  int min_cinv() const;
  int max_cinv() const;

  /// Coefficient matrix of one monomial (zero matrix if absent).
  Mat2 coefficient(const Monomial& mono) const;

  /// d/dx_i and d/dp_i of the symbols (classical derivatives).
  WeylElement derivative_x(int i) const;
  WeylElement derivative_p(int i) const;

  std::string str() const;

 private:
  void add_term(const Monomial& mono, const Mat2& coef);
  Terms terms_;
};

WeylElement commutator(const WeylElement& a, const WeylElement& b);

/// Poisson bracket of the classical symbols, sum_i (df/dx_i dg/dp_i - df/dp_i dg/dx_i),
/// with matrix coefficients multiplied in order.
WeylElement poisson_symbol(const WeylElement& f, const WeylElement& g);

}  // namespace ncspin
