#include "ncspin/hydrogen.hpp"

#include <cmath>
#include <limits>

#include "ncspin/errors.hpp"

namespace ncspin {

std::string to_string(SpinOrbitCoupling c) {
  return c == SpinOrbitCoupling::shifted ? "shifted" : "naive";
}

SpinOrbitCoupling parse_spin_orbit_coupling(const std::string& name) {
  if (name == "shifted") return SpinOrbitCoupling::shifted;
  if (name == "naive") return SpinOrbitCoupling::naive;
  throw InvalidArgument("unknown spin-orbit coupling '" + name + "' (shifted | naive)");
}

HydrogenParams HydrogenParams::physical(double g) {
  HydrogenParams p;
  p.g = g;
  p.m = 510998.95;
  p.c = 1.0;
  p.hbar = 1.0;
  return p;
}

void HydrogenParams::validate() const {
  if (n_max < 1 || n_max > 6) throw InvalidArgument("n_max must be in 1..6");
  for (double v : {g, m, c, alpha_fs, hbar})
    if (!std::isfinite(v)) throw InvalidArgument("hydrogen parameters must be finite");
  if (!(m > 0.0) || !(c > 0.0) || !(hbar > 0.0) || !(alpha_fs > 0.0))
    throw InvalidArgument("m, c, hbar and alpha_fs must be positive");
}

double HydrogenParams::bohr_radius() const { return hbar * hbar / (m * coulomb_k()); }

double HydrogenParams::spin_orbit_factor() const {
  return coupling == SpinOrbitCoupling::shifted ? g - 1.0 : g;
}

namespace {

void check_numbers(int n, int l, const HydrogenParams& p) {
  if (n < 1 || n > 6) throw InvalidArgument("n must be in 1..6");
  if (l < 0 || l >= n) throw InvalidArgument("l must satisfy 0 <= l < n");
  (void)p;
}

void check_j(int l, double j) {
  const bool up = std::abs(j - (l + 0.5)) < 1e-12;
  const bool down = l >= 1 && std::abs(j - (l - 0.5)) < 1e-12;
  if (!up && !down) throw InvalidArgument("j must be l +- 1/2 with j >= 1/2");
}

}  // namespace

double bohr_energy(int n, const HydrogenParams& p) {
  return -p.coulomb_k() / (2.0 * p.bohr_radius() * n * n);
}

double sommerfeld_shift(int n, double j, const HydrogenParams& p) {
  const double a4 = std::pow(p.alpha_fs, 4);
  return -(p.rest_energy() * a4 / (2.0 * std::pow(n, 4))) * (n / (j + 0.5) - 0.75);
}

RadialExpectations closed_form_expectations(int n, int l, const HydrogenParams& p) {
  check_numbers(n, l, p);
  const double a = p.bohr_radius();
  const double k = p.coulomb_k();
  const double n3 = double(n) * n * n;
  RadialExpectations out;
  out.energy = bohr_energy(n, p);
  out.inv_r = 1.0 / (a * n * n);
  out.inv_r2 = 1.0 / (a * a * n3 * (l + 0.5));
  out.inv_r3 = l == 0 ? std::numeric_limits<double>::infinity()
                      : 1.0 / (a * a * a * n3 * l * (l + 0.5) * (l + 1.0));
  const double E = out.energy;
  out.p4 = 4.0 * p.m * p.m * (E * E + 2.0 * E * k * out.inv_r + k * k * out.inv_r2);
  return out;
}

namespace {

/// w'' = f(t) w with r = e^t and u(r) = r^{1/2} w.
struct RadialProblem {
  int l;
  double m, hbar, k;
  std::vector<double> t, r;
  double h;

  double f(std::size_t i, double E) const {
    const double V = -k / r[i];
    return (l + 0.5) * (l + 0.5) + 2.0 * m * r[i] * r[i] * (V - E) / (hbar * hbar);
  }

  /// Outward Numerov solution; returns the number of sign changes.
  int outward(double E, std::vector<double>& w, std::size_t stop) const {
    w.assign(t.size(), 0.0);
    w[0] = 1.0;
    w[1] = std::exp((l + 0.5) * (t[1] - t[0]));
    int nodes = 0;
    const double h2 = h * h / 12.0;
    for (std::size_t i = 1; i + 1 <= stop; ++i) {
      const double fm = 1.0 - h2 * f(i - 1, E);
      const double f0 = 1.0 + 5.0 * h2 * f(i, E);
      const double fp = 1.0 - h2 * f(i + 1, E);
      w[i + 1] = (2.0 * w[i] * f0 - w[i - 1] * fm) / fp;
      if ((w[i + 1] < 0.0) != (w[i] < 0.0) && w[i + 1] != 0.0) ++nodes;
      if (std::abs(w[i + 1]) > 1e200) {
        for (std::size_t j = 0; j <= i + 1; ++j) w[j] *= 1e-200;
      }
    }
    return nodes;
  }

  void inward(double E, std::vector<double>& w, std::size_t stop) const {
    const std::size_t N = t.size();
    w[N - 1] = 0.0;
    w[N - 2] = 1e-30;
    const double h2 = h * h / 12.0;
    for (std::size_t i = N - 2; i > stop; --i) {
      const double fp = 1.0 - h2 * f(i + 1, E);
      const double f0 = 1.0 + 5.0 * h2 * f(i, E);
      const double fm = 1.0 - h2 * f(i - 1, E);
      w[i - 1] = (2.0 * w[i] * f0 - w[i + 1] * fp) / fm;
    }
  }
};

double simpson(const std::vector<double>& y, double h) {
  const std::size_t N = y.size();
  double s = y[0] + y[N - 1];
  for (std::size_t i = 1; i + 1 < N; ++i) s += (i % 2 ? 4.0 : 2.0) * y[i];
  return s * h / 3.0;
}

}  // namespace

RadialExpectations numerical_expectations(int n, int l, const HydrogenParams& p,
                                          const RadialGrid& grid) {
  check_numbers(n, l, p);
  if (grid.points < 101 || grid.points % 2 == 0)
    throw InvalidArgument("radial grid needs an odd number of points >= 101");
  const double a = p.bohr_radius();
  RadialProblem prob{l, p.m, p.hbar, p.coulomb_k(), {}, {}, 0.0};
  const double t0 = std::log(grid.r_min_over_a * a);
  const double t1 = std::log((2.0 * n * n + 40.0 * n) * a);
  const std::size_t N = static_cast<std::size_t>(grid.points);
  prob.h = (t1 - t0) / double(N - 1);
  prob.t.resize(N);
  prob.r.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    prob.t[i] = t0 + prob.h * double(i);
    prob.r[i] = std::exp(prob.t[i]);
  }

  // Energy scale k / a; bracket between the n-th and (n+1)-th Bohr-like levels.
  const double unit = prob.k / a;
  double lo = -2.0 * unit;
  double hi = -0.5 * unit / ((n + 0.5) * (n + 0.5));
  const int target = n - l - 1;
  std::vector<double> w;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::abs(lo); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (prob.outward(mid, w, N - 1) > target)
      hi = mid;
    else
      lo = mid;
  }
  const double E = 0.5 * (lo + hi);

  // Match at the outer classical turning point.
  std::size_t match = N / 2;
  for (std::size_t i = N - 1; i > 1; --i)
    if (prob.f(i, E) < 0.0) {
      match = i;
      break;
    }
  std::vector<double> w_out, w_in(N, 0.0);
  prob.outward(E, w_out, match);
  prob.inward(E, w_in, match);
  const double scale = w_out[match] / w_in[match];
  std::vector<double> dens(N), y(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double wi = i <= match ? w_out[i] : w_in[i] * scale;
    dens[i] = prob.r[i] * prob.r[i] * wi * wi;
  }
  const double norm = simpson(dens, prob.h);
  const auto expect = [&](auto fn) {
    for (std::size_t i = 0; i < N; ++i) y[i] = dens[i] * fn(prob.r[i]);
    return simpson(y, prob.h) / norm;
  };
  RadialExpectations out;
  out.energy = E;
  out.inv_r = expect([](double r) { return 1.0 / r; });
  out.inv_r2 = expect([](double r) { return 1.0 / (r * r); });
  out.inv_r3 = l == 0 ? std::numeric_limits<double>::infinity()
                      : expect([](double r) { return 1.0 / (r * r * r); });
  const double k = prob.k;
  out.p4 = 4.0 * p.m * p.m * expect([&](double r) { return (E + k / r) * (E + k / r); });
  return out;
}

HydrogenLevel fine_structure_level(int n, int l, double j, const HydrogenParams& p) {
  p.validate();
  check_numbers(n, l, p);
  check_j(l, j);
  if (l == 0) throw InvalidArgument("l = 0 levels need the Darwin term, absent at this order");
  const RadialExpectations ex = closed_form_expectations(n, l, p);
  const double m = p.m, c = p.c, k = p.coulomb_k();
  HydrogenLevel lev;
  lev.n = n;
  lev.l = l;
  lev.j = j;
  lev.kinetic = -ex.p4 / (8.0 * m * m * m * c * c);
  const double ls = 0.5 * p.hbar * p.hbar * (j * (j + 1.0) - l * (l + 1.0) - 0.75);
  lev.spin_orbit = p.spin_orbit_factor() * k / (2.0 * m * m * c * c) * ex.inv_r3 * ls;
  lev.zeeman = 0.0;
  lev.total = lev.kinetic + lev.spin_orbit + lev.zeeman;
  lev.sommerfeld = sommerfeld_shift(n, j, p);
  lev.deviation = std::abs(lev.total - lev.sommerfeld) / std::abs(lev.sommerfeld);
  lev.total_alpha4 = lev.total / (p.rest_energy() * std::pow(p.alpha_fs, 4));
  return lev;
}

std::vector<HydrogenLevel> hydrogen_fine_structure(const HydrogenParams& p) {
  p.validate();
  std::vector<HydrogenLevel> out;
  for (int n = 2; n <= p.n_max; ++n)
    for (int l = 1; l < n; ++l) {
      out.push_back(fine_structure_level(n, l, l - 0.5, p));
      out.push_back(fine_structure_level(n, l, l + 0.5, p));
    }
  return out;
}

double fine_splitting(int n, int l, const HydrogenParams& p) {
  return fine_structure_level(n, l, l + 0.5, p).total - fine_structure_level(n, l, l - 0.5, p).total;
}

}  // namespace ncspin
