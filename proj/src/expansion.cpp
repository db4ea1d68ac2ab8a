#include "ncspin/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ncspin/dynamics.hpp"

namespace ncspin {

bool expansion_valid(const PhaseState& z, const Model& model) {
  const Particle& pt = model.particle;
  const Vec3 P = calP(z, model).spatial();
  return std::sqrt(dot3(P, P)) / (pt.m * pt.c) < kExpansionValidity;
}

double hamiltonian_charge(const PhaseState& z, const Model& model) {
  const Particle& pt = model.particle;
  const Vec3 P = kinetic_spatial(z, model);
  const double P2 = dot3(P, P);
  const double m = pt.m, c = pt.c;
  return m * c * c + P2 / (2.0 * m) - P2 * P2 / (8.0 * m * m * m * c * c) +
         pt.e * model.field.potential(z.x)[0];
}

double hamiltonian_spin(const PhaseState& z, const Model& model) {
  if (z.spinless) return 0.0;
  const Particle& pt = model.particle;
  const Vec3 P = kinetic_spatial(z, model);
  const Vec3 S = spin_tensor(z).spin_vector();
  const auto [E, B] = extract_EB(model.field.field(z.x));
  const double mc = pt.m * pt.c;
  return pt.e * pt.g / (2.0 * mc) * (dot3(S, cross3(P, E)) / mc - dot3(B, S));
}

double hamiltonian_expanded(const PhaseState& z, const Model& model) {
  return hamiltonian_charge(z, model) + hamiltonian_spin(z, model);
}

namespace {

bool spatial_spin_indices(const PairIndex& id) {
  switch (id.pair) {
    case BracketPair::SS:
      return std::all_of(id.idx.begin(), id.idx.end(), [](std::size_t v) { return v >= 1; });
    case BracketPair::Sx:
    case BracketPair::SP:
      return id.idx[0] >= 1 && id.idx[1] >= 1;
    default:
      return true;
  }
}

double delta(std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; }

}  // namespace

double expanded_bracket(const PairIndex& id, const PhaseState& z, const Model& model) {
  if (!spatial_spin_indices(id))
    throw InvalidArgument("expanded brackets cover spatial spin components only");
  const Particle& pt = model.particle;
  const auto& k = id.idx;
  switch (id.pair) {
    case BracketPair::xx: {
      const AntisymTensor4 S = spin_tensor(z);
      return S(k[0], k[1]) / (2.0 * pt.m * pt.m * pt.c * pt.c);
    }
    case BracketPair::xP:
      return delta(k[0], k[1]);
    case BracketPair::PP:
      return pt.e / pt.c * model.field.field(z.x)(k[0], k[1]);
    case BracketPair::Sx:
    case BracketPair::SP:
      return 0.0;
    case BracketPair::SS: {
      const AntisymTensor4 S = spin_tensor(z);
      const std::size_t i = k[0], j = k[1], a = k[2], b = k[3];
      return 2.0 * (delta(i, a) * S(j, b) - delta(i, b) * S(j, a) - delta(j, a) * S(i, b) +
                    delta(j, b) * S(i, a));
    }
  }
  throw InvalidArgument("unknown bracket pair");
}

int remainder_order(BracketPair pair) {
  switch (pair) {
    case BracketPair::xx: return 2;
    case BracketPair::xP: return 2;
    case BracketPair::Sx: return 1;
    case BracketPair::PP: return 3;
    case BracketPair::SP: return 2;
    case BracketPair::SS: return 1;
  }
  return 0;
}

std::vector<PairIndex> expansion_components(BracketPair pair) {
  std::vector<PairIndex> out;
  for (const auto& id : all_components(pair))
    if (spatial_spin_indices(id)) out.push_back(id);
  return out;
}

PhaseState family_state(const StateFamily& family, const Model& model) {
  const Particle& pt = model.particle;
  const double v2 = dot3(family.velocity, family.velocity);
  if (!(v2 < pt.c * pt.c)) throw InvalidArgument("family velocity must be below c");
  const double gm = pt.m / std::sqrt(1.0 - v2 / (pt.c * pt.c));
  const Vec3 P{gm * family.velocity[0], gm * family.velocity[1], gm * family.velocity[2]};
  return init_state(family.x, P, family.spin_dir, model);
}

std::vector<double> default_ladder() { return {10.0, 20.0, 40.0, 80.0}; }

bool ExpansionReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const PairScaling& r) { return r.passed(); });
}

namespace {

using ResidualFn = std::function<std::pair<double, double>(const PhaseState&, const Model&)>;

/// Evaluates `fn` (residual, reference magnitude) along the ladder.
PairScaling run_ladder(const std::string& name, int order, const Model& base,
                       const StateFamily& family, const std::vector<double>& ladder,
                       const ResidualFn& fn) {
  if (ladder.size() < 2) throw InvalidArgument("the c ladder needs at least two points");
  for (std::size_t k = 1; k < ladder.size(); ++k)
    if (!(ladder[k] > ladder[k - 1])) throw InvalidArgument("the c ladder must increase strictly");
  PairScaling row;
  row.name = name;
  row.order = order;
  bool exact = true;
  for (double c : ladder) {
    Model m = base;
    m.particle.c = c;
    const PhaseState z = family_state(family, m);
    const auto [res, ref] = fn(z, m);
    row.points.push_back({c, res, res * std::pow(c, order)});
    // Rounding-level residuals count as exact.
    if (res > 1e-14 * (1.0 + ref)) exact = false;
  }
  row.exact = exact;
  row.decreasing = true;
  for (std::size_t k = 1; k < row.points.size(); ++k)
    if (!(row.points[k].scaled < row.points[k - 1].scaled)) row.decreasing = false;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (const auto& p : row.points)
    if (p.residual > 0.0) {
      const double lx = std::log(p.c), ly = std::log(p.residual);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
  if (n >= 2) row.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return row;
}

}  // namespace

PairScaling scaling_order(BracketPair pair, const Model& base, const StateFamily& family,
                          const std::vector<double>& ladder) {
  const auto comps = expansion_components(pair);
  std::vector<std::pair<Observable, Observable>> observables;
  for (const auto& id : comps) observables.push_back(id.observables());
  return run_ladder(
      to_string(pair), remainder_order(pair), base, family, ladder,
      [&](const PhaseState& z, const Model& m) {
        const DiracStructure ds(z, m);
        double res = 0.0, ref = 0.0;
        for (std::size_t k = 0; k < comps.size(); ++k) {
          const double exact = ds.bracket(observables[k].first.gradient(z, m),
                                          observables[k].second.gradient(z, m));
          const double lead = expanded_bracket(comps[k], z, m);
          res = std::max(res, std::abs(exact - lead));
          ref = std::max(ref, std::abs(lead));
        }
        return std::pair{res, ref};
      });
}

ExpansionReport scaling_order(const Model& base, const StateFamily& family,
                              const std::vector<double>& ladder) {
  ExpansionReport report;
  report.background = std::string(to_string(base.field.kind()));
  report.ladder = ladder;
  for (auto pair : {BracketPair::xx, BracketPair::xP, BracketPair::Sx, BracketPair::PP,
                    BracketPair::SP, BracketPair::SS})
    report.rows.push_back(scaling_order(pair, base, family, ladder));

  report.rows.push_back(run_ladder("H", 2, base, family, ladder,
                                   [](const PhaseState& z, const Model& m) {
                                     const double h = hamiltonian_cov(z, m);
                                     return std::pair{std::abs(h - hamiltonian_expanded(z, m)),
                                                      std::abs(h)};
                                   }));
  report.rows.push_back(run_ladder(
      "H_spin", 2, base, family, ladder, [](const PhaseState& z, const Model& m) {
        const PhaseState bare = spinless_state(z.x.spatial(), calP(z, m).spatial(), m);
        const double split = hamiltonian_cov(z, m) - hamiltonian_cov(bare, m);
        const double lead = hamiltonian_spin(z, m);
        return std::pair{std::abs(split - lead), std::abs(lead)};
      }));
  const auto canonical_row = [&](const std::string& name, double CanonicalResiduals::*field) {
    return run_ladder(name, 2, base, family, ladder, [field](const PhaseState& z, const Model& m) {
      return std::pair{canonical_bracket_residuals(z, m).*field, 1.0};
    });
  };
  report.rows.push_back(canonical_row("x'x'", &CanonicalResiduals::xx));
  report.rows.push_back(canonical_row("x'P'", &CanonicalResiduals::xP));
  report.rows.push_back(canonical_row("P'P'", &CanonicalResiduals::PP));
  return report;
}

// --- canonical variables ------------------------------------------------------

namespace {

template <class T>
std::pair<Vec3T<T>, Vec3T<T>> primed_variables(const Vec3T<T>& x, const Vec3T<T>& P,
                                               const BasicAntisymTensor<T>& S, const Model& model) {
  const Particle& pt = model.particle;
  const double k = 1.0 / (4.0 * pt.m * pt.m * pt.c * pt.c);
  const double ec = pt.e / pt.c;
  Vec3T<T> xp = x;
  Vec3T<T> Pp = P;
  int extra = 0;
  for (int iter = 0; iter < 100 && extra < 3; ++iter) {
    const BasicFourVector<T> A =
        model.field.potential(BasicFourVector<T>::from_parts(T(0.0), xp));
    for (std::size_t i = 0; i < 3; ++i) Pp[i] = P[i] + ec * A[i + 1];
    double change = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      T next = x[i];
      for (std::size_t j = 0; j < 3; ++j) next += k * S(i + 1, j + 1) * Pp[j];
      change = std::max(change, std::abs(value_of(next) - value_of(xp[i])));
      scale = std::max(scale, std::abs(value_of(next)));
      xp[i] = next;
    }
    if (change <= 1e-16 * std::max(scale, 1.0)) ++extra;
  }
  return {xp, Pp};
}

}  // namespace

CanonicalVariables canonical_map(const PhaseState& z, const Model& model) {
  CanonicalVariables v;
  v.S = spin_tensor(z);
  const auto [xp, Pp] = primed_variables(z.x.spatial(), kinetic_spatial(z, model), v.S, model);
  v.x = xp;
  v.P = Pp;
  return v;
}

std::pair<Vec3, Vec3> canonical_map_inverse(const CanonicalVariables& v, const Model& model) {
  const Particle& pt = model.particle;
  const double k = 1.0 / (4.0 * pt.m * pt.m * pt.c * pt.c);
  const FourVector A = model.field.potential(FourVector::from_parts(0.0, v.x));
  Vec3 x{}, P{};
  for (std::size_t i = 0; i < 3; ++i) {
    x[i] = v.x[i];
    for (std::size_t j = 0; j < 3; ++j) x[i] -= k * v.S(i + 1, j + 1) * v.P[j];
    P[i] = v.P[i] - pt.e / pt.c * A[i + 1];
  }
  return {x, P};
}

namespace obs {

Observable canonical_x(std::size_t i) {
  if (i < 1 || i > 3) throw InvalidArgument("observable index out of range");
  return {"x'" + std::to_string(i), [i](const DualState& z, const Model& m) {
            return primed_variables(z.x.spatial(), kinetic_spatial(z, m), spin_tensor(z), m)
                .first[i - 1];
          }};
}

Observable canonical_P(std::size_t i) {
  if (i < 1 || i > 3) throw InvalidArgument("observable index out of range");
  return {"P'" + std::to_string(i), [i](const DualState& z, const Model& m) {
            return primed_variables(z.x.spatial(), kinetic_spatial(z, m), spin_tensor(z), m)
                .second[i - 1];
          }};
}

}  // namespace obs

CanonicalResiduals canonical_bracket_residuals(const PhaseState& z, const Model& model) {
  const DiracStructure ds(z, model);
  std::array<Gradient, 3> gx, gP;
  for (std::size_t i = 0; i < 3; ++i) {
    gx[i] = obs::canonical_x(i + 1).gradient(z, model);
    gP[i] = obs::canonical_P(i + 1).gradient(z, model);
  }
  CanonicalResiduals r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      r.xx = std::max(r.xx, std::abs(ds.bracket(gx[i], gx[j])));
      r.xP = std::max(r.xP, std::abs(ds.bracket(gx[i], gP[j]) - delta(i, j)));
      r.PP = std::max(r.PP, std::abs(ds.bracket(gP[i], gP[j])));
    }
  return r;
}

}  // namespace ncspin
