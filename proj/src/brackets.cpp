#include "ncspin/brackets.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ncspin {

namespace {

bool degenerate(double d, const Particle& pt) {
  return !(std::abs(d) > 1e-12 * std::max(1.0, pt.m * pt.m * pt.c * pt.c));
}

}  // namespace

DiracStructure::DiracStructure(const PhaseState& z, const Model& model) {
  if (z.spinless) {
    canonical_ = true;
    return;
  }
  dT3_ = obs::T3().gradient(z, model);
  dT4_ = obs::T4().gradient(z, model);
  t3t4_ = poisson_bracket(dT3_, dT4_);
  if (!std::isfinite(t3t4_) || degenerate(t3t4_, model.particle))
    throw DegenerateConstraints("{T3, T4} vanishes: the constraints are not second class here");
}

double DiracStructure::bracket(const Gradient& a, const Gradient& b) const {
  const double ab = poisson_bracket(a, b);
  if (canonical_) return ab;
  const double a3 = poisson_bracket(a, dT3_);
  const double a4 = poisson_bracket(a, dT4_);
  const double b3 = poisson_bracket(b, dT3_);
  const double b4 = poisson_bracket(b, dT4_);
  return ab - (a3 * b4 - a4 * b3) / t3t4_;
}

double dirac_bracket_direct(const Observable& a, const Observable& b, const PhaseState& z,
                            const Model& model) {
  const DiracStructure ds(z, model);
  return ds.bracket(a.gradient(z, model), b.gradient(z, model));
}

// --- coefficients -----------------------------------------------------------

DiracCoefficients dirac_coefficients(const PhaseState& z, const Model& model) {
  if (z.spinless) throw InvalidArgument("Dirac coefficients need a spinning state");
  const Particle& pt = model.particle;
  DiracCoefficients co;
  co.P = calP(z, model);
  co.S = spin_tensor(z);
  co.F = model.field.field(z.x);
  co.FS = contract_FS(co.F, co.S);
  const auto dF = model.field.field_gradient(z.x);
  for (std::size_t i = 0; i < 3; ++i) co.grad_FS[i] = contract_FS(dF[i + 1], co.S);

  const auto tp = tensor_product(co.F, co.S);
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) co.FS_antisym[mu][nu] = tp[mu][nu] - tp[nu][mu];

  const double denom = 4.0 * pt.m * pt.m * pt.c * pt.c * pt.c - pt.e * (pt.g + 1.0) * co.FS;
  if (!(std::abs(denom) > 1e-12 * 4.0 * pt.m * pt.m * pt.c * pt.c * pt.c))
    throw DegenerateConstraints("4m^2c^3 - e(g+1)(SF) vanishes");
  // a / e stays finite for a neutral particle.
  const double a_over_e = -2.0 / denom;
  co.a = pt.e * a_over_e;

  const FourVector FP = tensor_vector(co.F, co.P);
  double SFP0 = 0.0;
  for (std::size_t al = 0; al < 4; ++al) SFP0 += co.S(0, al) * eta(al) * FP[al];
  double S0dFS = 0.0;
  for (std::size_t i = 1; i < 4; ++i) S0dFS += co.S(0, i) * co.grad_FS[i - 1];

  const double P0 = co.P[0];
  co.u0 = P0 - 0.5 * (pt.g - 2.0) * co.a * SFP0 + 0.125 * pt.g * co.a * S0dFS;
  if (degenerate(co.u0, pt)) throw DegenerateConstraints("u0 vanishes");
  co.t3t4 = co.u0 / (2.0 * pt.c * a_over_e * P0);

  const double cD = -2.0 * pt.c * a_over_e / co.u0;
  const double cK = -pt.g * pt.c * a_over_e / (4.0 * co.u0);
  const double cL = -pt.g * co.a / co.u0;
  const double cG = -2.0 * pt.c * a_over_e * P0 / co.u0;
  const auto& P = co.P;
  const auto& S = co.S;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      co.Delta[mu][nu] = cD * (P[0] * S(mu, nu) + P[mu] * S(nu, 0) + P[nu] * S(0, mu));
      // d^nu = d_nu for spatial nu; the fields are static.
      co.K[mu][nu] = nu == 0 ? 0.0 : cK * S(0, mu) * co.grad_FS[nu - 1];
      co.g_eff[mu][nu] = (mu == nu ? eta(mu) : 0.0) + cG * P[mu] * P[nu];
      for (std::size_t al = 0; al < 4; ++al) co.L[mu][nu][al] = cL * co.FS_antisym[mu][nu] * S(0, al);
    }
  return co;
}

// --- pair bookkeeping ---------------------------------------------------------

std::string to_string(BracketPair pair) {
  switch (pair) {
    case BracketPair::xx: return "xx";
    case BracketPair::xP: return "xP";
    case BracketPair::PP: return "PP";
    case BracketPair::SS: return "SS";
    case BracketPair::Sx: return "Sx";
    case BracketPair::SP: return "SP";
  }
  return "?";
}

BracketPair parse_bracket_pair(const std::string& name) {
  for (auto p : {BracketPair::xx, BracketPair::xP, BracketPair::PP, BracketPair::SS,
                 BracketPair::Sx, BracketPair::SP})
    if (to_string(p) == name) return p;
  throw InvalidArgument("unknown bracket pair '" + name + "' (expected xx, xP, PP, SS, Sx, SP)");
}

namespace {

void check_range(std::size_t v, std::size_t lo, std::size_t hi) {
  if (v < lo || v > hi) throw InvalidArgument("bracket component index out of range");
}

void validate(const PairIndex& id) {
  const auto& k = id.idx;
  switch (id.pair) {
    case BracketPair::xx:
    case BracketPair::xP:
    case BracketPair::PP:
      check_range(k[0], 1, 3);
      check_range(k[1], 1, 3);
      break;
    case BracketPair::SS:
      for (auto v : k) check_range(v, 0, 3);
      break;
    case BracketPair::Sx:
    case BracketPair::SP:
      check_range(k[0], 0, 3);
      check_range(k[1], 0, 3);
      check_range(k[2], 1, 3);
      break;
  }
}

}  // namespace

std::string PairIndex::label() const {
  const auto s = [](std::size_t v) { return std::to_string(v); };
  switch (pair) {
    case BracketPair::xx: return "{x" + s(idx[0]) + ",x" + s(idx[1]) + "}";
    case BracketPair::xP: return "{x" + s(idx[0]) + ",P" + s(idx[1]) + "}";
    case BracketPair::PP: return "{P" + s(idx[0]) + ",P" + s(idx[1]) + "}";
    case BracketPair::SS:
      return "{S" + s(idx[0]) + s(idx[1]) + ",S" + s(idx[2]) + s(idx[3]) + "}";
    case BracketPair::Sx: return "{S" + s(idx[0]) + s(idx[1]) + ",x" + s(idx[2]) + "}";
    case BracketPair::SP: return "{S" + s(idx[0]) + s(idx[1]) + ",P" + s(idx[2]) + "}";
  }
  return "?";
}

std::pair<Observable, Observable> PairIndex::observables() const {
  validate(*this);
  const auto& k = idx;
  switch (pair) {
    case BracketPair::xx: return {obs::x(k[0]), obs::x(k[1])};
    case BracketPair::xP: return {obs::x(k[0]), obs::P(k[1])};
    case BracketPair::PP: return {obs::P(k[0]), obs::P(k[1])};
    case BracketPair::SS: return {obs::S(k[0], k[1]), obs::S(k[2], k[3])};
    case BracketPair::Sx: return {obs::S(k[0], k[1]), obs::x(k[2])};
    case BracketPair::SP: return {obs::S(k[0], k[1]), obs::P(k[2])};
  }
  throw InvalidArgument("unknown bracket pair");
}

std::vector<PairIndex> all_components(BracketPair pair) {
  std::vector<PairIndex> out;
  switch (pair) {
    case BracketPair::xx:
    case BracketPair::PP:
      for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = i + 1; j <= 3; ++j) out.push_back({pair, {i, j, 0, 0}});
      break;
    case BracketPair::xP:
      for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) out.push_back(PairIndex::xP(i, j));
      break;
    case BracketPair::SS: {
      std::vector<std::pair<std::size_t, std::size_t>> planes;
      for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = mu + 1; nu < 4; ++nu) planes.emplace_back(mu, nu);
      for (std::size_t a = 0; a < planes.size(); ++a)
        for (std::size_t b = a + 1; b < planes.size(); ++b)
          out.push_back(PairIndex::SS(planes[a].first, planes[a].second, planes[b].first,
                                      planes[b].second));
      break;
    }
    case BracketPair::Sx:
    case BracketPair::SP:
      for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = mu + 1; nu < 4; ++nu)
          for (std::size_t j = 1; j <= 3; ++j) out.push_back({pair, {mu, nu, j, 0}});
      break;
  }
  return out;
}

// --- closed forms -------------------------------------------------------------

double dirac_bracket_closed(const PairIndex& id, const DiracCoefficients& co, const Model& model,
                            FormulaVariant variant) {
  validate(id);
  const Particle& pt = model.particle;
  const double ec = pt.e / pt.c;
  const auto& D = co.Delta;
  const auto& K = co.K;
  const auto& L = co.L;
  const auto& G = co.g_eff;
  const auto& P = co.P;
  const auto& S = co.S;
  const auto F = [&](std::size_t a, std::size_t b) { return co.F(a, b); };
  // Delta^{a k} F^{k j} summed over spatial k.
  const auto DF = [&](std::size_t a, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 1; k < 4; ++k) s += D[a][k] * F(k, j);
    return s;
  };
  const bool printed = variant == FormulaVariant::printed;
  const auto& k = id.idx;

  switch (id.pair) {
    case BracketPair::xx:
      return 0.5 * D[k[0]][k[1]];
    case BracketPair::xP: {
      const std::size_t i = k[0], j = k[1];
      return (i == j ? 1.0 : 0.0) - 0.5 * ec * (DF(i, j) - K[i][j]);
    }
    case BracketPair::PP: {
      const std::size_t i = k[0], j = k[1];
      double fdf = 0.0, fk = 0.0;
      for (std::size_t a = 1; a < 4; ++a) {
        fk += F(i, a) * K[a][j] - F(j, a) * K[a][i];
        for (std::size_t b = 1; b < 4; ++b) fdf += F(i, a) * D[a][b] * F(b, j);
      }
      return ec * F(i, j) - 0.5 * ec * ec * (fdf - fk);
    }
    case BracketPair::SS: {
      const std::size_t mu = k[0], nu = k[1], al = k[2], be = k[3];
      double v = 2.0 * (G[mu][al] * S(nu, be) - G[mu][be] * S(nu, al) - G[nu][al] * S(mu, be) +
                        G[nu][be] * S(mu, al));
      v += L[mu][nu][al] * P[be] - L[mu][nu][be] * P[al];
      if (!printed) v -= L[al][be][mu] * P[nu] - L[al][be][nu] * P[mu];
      return v;
    }
    case BracketPair::Sx: {
      const std::size_t mu = k[0], nu = k[1], j = k[2];
      const double sign = printed ? 0.5 : -0.5;
      return P[mu] * D[nu][j] - P[nu] * D[mu][j] + sign * L[mu][nu][j];
    }
    case BracketPair::SP: {
      const std::size_t mu = k[0], nu = k[1], j = k[2];
      double lf = 0.0;
      for (std::size_t a = 1; a < 4; ++a) lf += L[mu][nu][a] * F(a, j);
      return ec * (-P[mu] * (DF(nu, j) - K[nu][j]) + P[nu] * (DF(mu, j) - K[mu][j]) + 0.5 * lf);
    }
  }
  throw InvalidArgument("unknown bracket pair");
}

double dirac_bracket_closed(const PairIndex& id, const PhaseState& z, const Model& model,
                            FormulaVariant variant) {
  return dirac_bracket_closed(id, dirac_coefficients(z, model), model, variant);
}

// --- auxiliary table ----------------------------------------------------------

namespace {

struct AuxRow {
  std::string name;
  std::vector<Observable> observables;
};

std::vector<AuxRow> auxiliary_rows() {
  std::vector<AuxRow> rows;
  AuxRow x{"x", {}}, P{"P", {}}, P0{"P0", {obs::P0()}}, w{"omega", {}}, p{"pi", {}}, J{"J", {}};
  for (std::size_t i = 1; i <= 3; ++i) {
    x.observables.push_back(obs::x(i));
    P.observables.push_back(obs::P(i));
  }
  for (std::size_t mu = 0; mu < 4; ++mu) {
    w.observables.push_back(obs::omega(mu));
    p.observables.push_back(obs::pi(mu));
    for (std::size_t nu = mu + 1; nu < 4; ++nu) J.observables.push_back(obs::S(mu, nu));
  }
  return {x, P, P0, w, p, J};
}

}  // namespace

std::vector<AuxiliaryEntry> auxiliary_bracket_table(const PhaseState& z, const Model& model,
                                                    double rel_tol) {
  const Particle& pt = model.particle;
  const DiracCoefficients co = dirac_coefficients(z, model);
  const double e = pt.e, c = pt.c, g = pt.g;
  const FourVector& P = co.P;
  const double P0 = P[0];
  const FourVector& w = z.omega;
  const FourVector& pi = z.pi;
  const FourVector Fw = tensor_vector(co.F, w);
  const FourVector Fpi = tensor_vector(co.F, pi);
  const auto spatialF = [&](const FourVector& v, std::size_t i) {
    double s = 0.0;
    for (std::size_t j = 1; j < 4; ++j) s += co.F(i, j) * v[j];
    return s;
  };
  const auto PFv = [&](const FourVector& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < 4; ++i) s += P[i] * spatialF(v, i);
    return s;
  };
  const auto v_dFS = [&](const FourVector& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < 4; ++i) s += v[i] * co.grad_FS[i - 1];
    return s;
  };
  const auto F0P = [&](const FourVector& v) {
    double s = 0.0;
    for (std::size_t i = 1; i < 4; ++i) s += co.F(0, i) * (P[0] * v[i] - P[i] * v[0]);
    return s;
  };
  const double kg = e * g / (2.0 * P0 * c);

  // Tabulated value for component n of a row, in the printed or resolved reading.
  using Formula = std::function<double(std::size_t n, bool printed)>;

  const auto J_index = [](std::size_t n) {
    static const std::size_t m[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    return std::pair<std::size_t, std::size_t>{m[n][0], m[n][1]};
  };

  std::vector<AuxiliaryEntry> out;
  const auto rows = auxiliary_rows();

  const auto add = [&](const AuxRow& row, const std::string& col, const Observable& colob,
                       const Formula& f, const std::string& note) {
    AuxiliaryEntry ent;
    ent.row = row.name;
    ent.column = col;
    ent.note = note;
    for (std::size_t n = 0; n < row.observables.size(); ++n) {
      const double direct = poisson_bracket(colob, row.observables[n], z, model);
      ent.scale = std::max(ent.scale, std::abs(direct));
      ent.printed_dev = std::max(ent.printed_dev, std::abs(f(n, true) - direct));
      ent.resolved_dev = std::max(ent.resolved_dev, std::abs(f(n, false) - direct));
    }
    const double tol = rel_tol * std::max(1.0, ent.scale);
    ent.printed_ok = ent.printed_dev <= tol;
    ent.resolved_ok = ent.resolved_dev <= tol;
    out.push_back(std::move(ent));
  };

  const Observable cP0 = obs::P0(), cT3 = obs::T3(), cT4 = obs::T4();
  const AuxRow& rx = rows[0];
  const AuxRow& rP = rows[1];
  const AuxRow& rP0 = rows[2];
  const AuxRow& rw = rows[3];
  const AuxRow& rpi = rows[4];
  const AuxRow& rJ = rows[5];

  // x^i
  add(rx, "P0", cP0, [&](std::size_t n, bool) { return -P[n + 1] / P0; }, "");
  add(rx, "T3", cT3, [&](std::size_t n, bool) { return -w[n + 1] + w[0] * P[n + 1] / P0; }, "");
  add(rx, "T4", cT4, [&](std::size_t n, bool) { return -pi[n + 1] + pi[0] * P[n + 1] / P0; }, "");

  // P^i
  const auto FPi = [&](std::size_t i, double grad_coef) {
    return spatialF(P, i) + grad_coef * co.grad_FS[i - 1];
  };
  add(rP, "P0", cP0, [&](std::size_t n, bool) { return -(e / (P0 * c)) * FPi(n + 1, g / 8.0); },
      "");
  add(rP, "T3", cT3,
      [&](std::size_t n, bool printed) {
        const double gc = printed ? 0.0 : g / 8.0;
        return (e * w[0] / (P0 * c)) * FPi(n + 1, gc) - (e / c) * spatialF(w, n + 1);
      },
      "printed numerator of the d_i(SF) coefficient is empty (read as 0); resolved: g/8");
  add(rP, "T4", cT4,
      [&](std::size_t n, bool) {
        return (e * pi[0] / (P0 * c)) * FPi(n + 1, g / 8.0) - (e / c) * spatialF(pi, n + 1);
      },
      "");

  // P^0
  add(rP0, "P0", cP0, [&](std::size_t, bool) { return 0.0; }, "");
  const auto P0row = [&](const FourVector& v, bool printed) {
    const double grad_coef = printed ? g / 8.0 : g / 4.0;
    const double f0_coef = printed ? g / 2.0 : g;
    return (e / (2.0 * P0 * c)) * ((g - 2.0) * PFv(v) + grad_coef * v_dFS(v) - f0_coef * F0P(v));
  };
  add(rP0, "T3", cT3, [&](std::size_t, bool printed) { return P0row(w, printed); },
      "printed coefficients g/8 and mu (read as g/2); resolved: g/4 and g");
  add(rP0, "T4", cT4, [&](std::size_t, bool printed) { return P0row(pi, printed); },
      "printed coefficients g/8 and g/2; resolved: g/4 and g");

  // omega^mu, pi^mu
  add(rw, "P0", cP0, [&](std::size_t n, bool) { return -kg * Fw[n]; }, "");
  add(rw, "T3", cT3, [&](std::size_t n, bool) { return w[0] * kg * Fw[n]; }, "");
  add(rw, "T4", cT4, [&](std::size_t n, bool) { return -P[n] + pi[0] * kg * Fw[n]; }, "");
  add(rpi, "P0", cP0, [&](std::size_t n, bool) { return -kg * Fpi[n]; }, "");
  add(rpi, "T3", cT3, [&](std::size_t n, bool) { return P[n] + w[0] * kg * Fpi[n]; }, "");
  add(rpi, "T4", cT4, [&](std::size_t n, bool) { return pi[0] * kg * Fpi[n]; }, "");

  // J^{mu nu}
  const auto twoPv = [&](const FourVector& v, std::size_t mu, std::size_t nu) {
    return 2.0 * (P[mu] * v[nu] - P[nu] * v[mu]);
  };
  add(rJ, "P0", cP0,
      [&](std::size_t n, bool) {
        const auto [mu, nu] = J_index(n);
        return -kg * co.FS_antisym[mu][nu];
      },
      "");
  add(rJ, "T3", cT3,
      [&](std::size_t n, bool) {
        const auto [mu, nu] = J_index(n);
        return w[0] * kg * co.FS_antisym[mu][nu] - twoPv(w, mu, nu);
      },
      "");
  add(rJ, "T4", cT4,
      [&](std::size_t n, bool) {
        const auto [mu, nu] = J_index(n);
        return pi[0] * kg * co.FS_antisym[mu][nu] - twoPv(pi, mu, nu);
      },
      "");

  // {T3, T4} = e u0 / (2 c a P0)
  AuxRow t4row{"T4", {cT4}};
  add(t4row, "T3", cT3, [&](std::size_t, bool) { return co.t3t4; }, "");
  out.back().row = "T3,T4";
  out.back().column = "-";
  return out;
}

}  // namespace ncspin
