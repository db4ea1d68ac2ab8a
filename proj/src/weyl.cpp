#include "ncspin/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ncspin/errors.hpp"

namespace ncspin {

Mat2 Mat2::identity() {
  Mat2 out;
  out(0, 0) = 1.0;
  out(1, 1) = 1.0;
  return out;
}

Mat2 Mat2::pauli(int k) {
  Mat2 out;
  switch (k) {
    case 0: return identity();
    case 1:
      out(0, 1) = 1.0;
      out(1, 0) = 1.0;
      return out;
    case 2:
      out(0, 1) = complex(0.0, -1.0);
      out(1, 0) = complex(0.0, 1.0);
      return out;
    case 3:
      out(0, 0) = 1.0;
      out(1, 1) = -1.0;
      return out;
    default:
      throw InvalidArgument("Pauli index must be 0..3");
  }
}

bool Mat2::is_zero() const {
  return std::all_of(m.begin(), m.end(), [](const complex& v) { return v == complex(0.0); });
}

double Mat2::max_abs() const {
  double out = 0.0;
  for (const auto& v : m) out = std::max(out, std::abs(v));
  return out;
}

Mat2 Mat2::dagger() const {
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

complex Mat2::pauli_component(int k) const {
  const Mat2 prod = (*this) * pauli(k);
  return 0.5 * (prod(0, 0) + prod(1, 1));
}

Mat2 operator+(Mat2 a, const Mat2& b) {
  for (int k = 0; k < 4; ++k) a.m[k] += b.m[k];
  return a;
}

Mat2 operator-(Mat2 a, const Mat2& b) {
  for (int k = 0; k < 4; ++k) a.m[k] -= b.m[k];
  return a;
}

Mat2 operator*(const Mat2& a, const Mat2& b) {
  Mat2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out(r, c) = a(r, 0) * b(0, c) + a(r, 1) * b(1, c);
  return out;
}

Mat2 operator*(complex s, Mat2 a) {
  for (auto& v : a.m) v *= s;
  return a;
}

std::string Monomial::str() const {
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < 3; ++i)
    if (x[i]) {
      os << (any ? " " : "") << "x" << i + 1 << (x[i] > 1 ? "^" + std::to_string(x[i]) : "");
      any = true;
    }
  for (int i = 0; i < 3; ++i)
    if (p[i]) {
      os << (any ? " " : "") << "p" << i + 1 << (p[i] > 1 ? "^" + std::to_string(p[i]) : "");
      any = true;
    }
  if (hbar) {
    os << (any ? " " : "") << "hbar^" << hbar;
    any = true;
  }
  if (cinv) {
    os << (any ? " " : "") << "c^" << -cinv;
    any = true;
  }
  return any ? os.str() : "1";
}

WeylElement WeylElement::scalar(complex value, int hbar, int cinv) {
  return matrix(value * Mat2::identity(), hbar, cinv);
}

WeylElement WeylElement::matrix(const Mat2& value, int hbar, int cinv) {
  WeylElement out;
  Monomial mono;
  mono.hbar = hbar;
  mono.cinv = cinv;
  out.add_term(mono, value);
  return out;
}

WeylElement WeylElement::monomial(const Monomial& mono, const Mat2& coef) {
  WeylElement out;
  out.add_term(mono, coef);
  return out;
}

WeylElement WeylElement::x(int i) {
  if (i < 1 || i > 3) throw InvalidArgument("position index must be 1..3");
  WeylElement out;
  Monomial mono;
  mono.x[i - 1] = 1;
  out.add_term(mono, Mat2::identity());
  return out;
}

WeylElement WeylElement::p(int i) {
  if (i < 1 || i > 3) throw InvalidArgument("momentum index must be 1..3");
  WeylElement out;
  Monomial mono;
  mono.p[i - 1] = 1;
  out.add_term(mono, Mat2::identity());
  return out;
}

WeylElement WeylElement::sigma(int k) { return matrix(Mat2::pauli(k)); }

void WeylElement::add_term(const Monomial& mono, const Mat2& coef) {
  if (coef.is_zero()) return;
  auto it = terms_.find(mono);
  if (it == terms_.end()) {
    terms_.emplace(mono, coef);
    return;
  }
  it->second = it->second + coef;
  if (it->second.is_zero()) terms_.erase(it);
}

bool WeylElement::is_zero(double tol) const { return max_abs() <= tol; }

double WeylElement::max_abs() const {
  double out = 0.0;
  for (const auto& [mono, coef] : terms_) out = std::max(out, coef.max_abs());
  return out;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
  for (const auto& [mono, coef] : o.terms_) add_term(mono, coef);
  return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) {
  for (const auto& [mono, coef] : o.terms_) add_term(mono, complex(-1.0) * coef);
  return *this;
}

WeylElement& WeylElement::operator*=(complex s) {
  if (s == complex(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coef] : terms_) coef = s * coef;
  return *this;
}

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
  return r;
}

double factorial(int k) {
  double r = 1.0;
  for (int i = 2; i <= k; ++i) r *= double(i);
  return r;
}

/// (-i)^k
complex minus_i_pow(int k) {
  static const complex table[4] = {complex(1, 0), complex(0, -1), complex(-1, 0), complex(0, 1)};
  return table[k % 4];
}

/// Product of two monomial terms; `reorder` false keeps only the commuting
/// (classical symbol) part.
void multiply_terms(const Monomial& a, const Mat2& ma, const Monomial& b, const Mat2& mb,
                    bool reorder, const std::function<void(const Monomial&, const Mat2&)>& emit) {
  const Mat2 prod = ma * mb;
  // Enumerate k = (k1, k2, k3) with k_d <= min(p_a[d], x_b[d]).
  std::array<int, 3> kmax{};
  for (int d = 0; d < 3; ++d) kmax[d] = reorder ? std::min(a.p[d], b.x[d]) : 0;
  for (int k1 = 0; k1 <= kmax[0]; ++k1)
    for (int k2 = 0; k2 <= kmax[1]; ++k2)
      for (int k3 = 0; k3 <= kmax[2]; ++k3) {
        const std::array<int, 3> k{k1, k2, k3};
        Monomial out;
        double coef = 1.0;
        int ktot = 0;
        for (int d = 0; d < 3; ++d) {
          out.x[d] = a.x[d] + b.x[d] - k[d];
          out.p[d] = a.p[d] + b.p[d] - k[d];
          coef *= binomial(a.p[d], k[d]) * binomial(b.x[d], k[d]) * factorial(k[d]);
          ktot += k[d];
        }
        out.hbar = a.hbar + b.hbar + ktot;
        out.cinv = a.cinv + b.cinv;
        emit(out, (coef * minus_i_pow(ktot)) * prod);
      }
}

}  // namespace

WeylElement operator*(const WeylElement& a, const WeylElement& b) {
  WeylElement out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      multiply_terms(ma, ca, mb, cb, true,
                     [&](const Monomial& m, const Mat2& c) { out.add_term(m, c); });
  return out;
}

WeylElement WeylElement::scaled(int hbar, int cinv) const {
  WeylElement out;
  for (const auto& [mono, coef] : terms_) {
    Monomial m = mono;
    m.hbar += hbar;
    m.cinv += cinv;
    out.add_term(m, coef);
  }
  return out;
}

WeylElement WeylElement::adjoint() const {
  WeylElement out;
  for (const auto& [mono, coef] : terms_) {
    Monomial xs, ps;
    xs.x = mono.x;
    ps.p = mono.p;
    ps.hbar = mono.hbar;
    ps.cinv = mono.cinv;
    WeylElement P, X;
    P.add_term(ps, coef.dagger());
    X.add_term(xs, Mat2::identity());
    out += P * X;
  }
  return out;
}

WeylElement WeylElement::cinv_part(int k) const {
  WeylElement out;
  for (const auto& [mono, coef] : terms_)
    if (mono.cinv == k) out.add_term(mono, coef);
  return out;
}

WeylElement WeylElement::hbar_part(int h) const {
  WeylElement out;
  for (const auto& [mono, coef] : terms_)
    if (mono.hbar == h) out.add_term(mono, coef);
  return out;
}

WeylElement WeylElement::truncated(int max_cinv) const {
  WeylElement out;
  for (const auto& [mono, coef] : terms_)
    if (mono.cinv <= max_cinv) out.add_term(mono, coef);
  return out;
}

int WeylElement::min_cinv() const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first.cinv;
  for (const auto& [mono, coef] : terms_) m = std::min(m, mono.cinv);
  return m;
}

int WeylElement::max_cinv() const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first.cinv;
  for (const auto& [mono, coef] : terms_) m = std::max(m, mono.cinv);
  return m;
}

Mat2 WeylElement::coefficient(const Monomial& mono) const {
  const auto it = terms_.find(mono);
  return it == terms_.end() ? Mat2{} : it->second;
}

WeylElement WeylElement::derivative_x(int i) const {
  if (i < 1 || i > 3) throw InvalidArgument("position index must be 1..3");
  WeylElement out;
  for (const auto& [mono, coef] : terms_) {
    if (mono.x[i - 1] == 0) continue;
    Monomial m = mono;
    m.x[i - 1] -= 1;
    out.add_term(m, complex(double(mono.x[i - 1])) * coef);
  }
  return out;
}

WeylElement WeylElement::derivative_p(int i) const {
  if (i < 1 || i > 3) throw InvalidArgument("momentum index must be 1..3");
  WeylElement out;
  for (const auto& [mono, coef] : terms_) {
    if (mono.p[i - 1] == 0) continue;
    Monomial m = mono;
    m.p[i - 1] -= 1;
    out.add_term(m, complex(double(mono.p[i - 1])) * coef);
  }
  return out;
}

std::string WeylElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, coef] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "[";
    for (int k = 0; k < 4; ++k) {
      if (k) os << (k == 2 ? "; " : ", ");
      os << coef.m[k].real();
      if (coef.m[k].imag() != 0.0) os << (coef.m[k].imag() > 0 ? "+" : "") << coef.m[k].imag() << "i";
    }
    os << "] " << mono.str();
  }
  return os.str();
}

WeylElement commutator(const WeylElement& a, const WeylElement& b) { return a * b - b * a; }

WeylElement poisson_symbol(const WeylElement& f, const WeylElement& g) {
  // Classical symbols commute: multiply without re-ordering terms.
  const auto symbol_product = [](const WeylElement& a, const WeylElement& b) {
    WeylElement out;
    for (const auto& [ma, ca] : a.terms())
      for (const auto& [mb, cb] : b.terms())
        multiply_terms(ma, ca, mb, cb, false, [&](const Monomial& m, const Mat2& c) {
          out += WeylElement::monomial(m, c);
        });
    return out;
  };
  WeylElement out;
  for (int i = 1; i <= 3; ++i) {
    out += symbol_product(f.derivative_x(i), g.derivative_p(i));
    out -= symbol_product(f.derivative_p(i), g.derivative_x(i));
  }
  return out;
}

}  // namespace ncspin
