#include "ncspin/verify.hpp"

#include <algorithm>
#include <cmath>

namespace ncspin {

std::vector<BackgroundKind> catalog_kinds() {
  return {BackgroundKind::zero, BackgroundKind::uniform_e, BackgroundKind::uniform_b,
          BackgroundKind::crossed, BackgroundKind::coulomb};
}

BackgroundParams catalog_params(BackgroundKind kind) {
  BackgroundParams p;
  const Vec3 E{0.3, -0.2, 0.5};
  const Vec3 B{0.4, 0.1, -0.6};
  switch (kind) {
    case BackgroundKind::zero: break;
    case BackgroundKind::uniform_e: p.E = E; break;
    case BackgroundKind::uniform_b: p.B = B; break;
    case BackgroundKind::crossed: p.E = E; p.B = B; break;
    case BackgroundKind::coulomb: p.q = -3.0; break;
  }
  return p;
}

Model catalog_model(BackgroundKind kind, const Particle& particle) {
  return Model{particle, make_background(kind, catalog_params(kind))};
}

PhaseState random_constrained_state(std::mt19937_64& rng, const Model& model) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::normal_distribution<double> N(0.0, 1.0);
  const Vec3 x{2.0 + U(rng), 1.0 + U(rng), U(rng)};
  const Vec3 P{3.0 * U(rng), 3.0 * U(rng), 3.0 * U(rng)};
  Vec3 n{N(rng), N(rng), N(rng)};
  const double norm = std::sqrt(dot3(n, n));
  for (auto& v : n) v /= norm;
  return init_state(x, P, n, model);
}

bool BracketReport::closed_ok(double tol) const {
  return std::all_of(pairs.begin(), pairs.end(),
                     [tol](const PairDeviation& d) { return d.adjudicated < tol; });
}

bool BracketReport::table_resolved() const {
  return std::all_of(table.begin(), table.end(),
                     [](const AuxiliaryEntry& e) { return e.resolved_ok; });
}

namespace {

std::vector<Observable> defining_targets() {
  std::vector<Observable> out;
  for (std::size_t i = 1; i <= 3; ++i) {
    out.push_back(obs::x(i));
    out.push_back(obs::P(i));
  }
  for (std::size_t mu = 0; mu < 4; ++mu) {
    for (std::size_t nu = mu + 1; nu < 4; ++nu) out.push_back(obs::S(mu, nu));
    out.push_back(obs::omega(mu));
    out.push_back(obs::pi(mu));
  }
  out.push_back(obs::hamiltonian());
  return out;
}

void merge_table(std::vector<AuxiliaryEntry>& acc, const std::vector<AuxiliaryEntry>& cur) {
  if (acc.empty()) {
    acc = cur;
    return;
  }
  for (std::size_t k = 0; k < acc.size(); ++k) {
    acc[k].printed_dev = std::max(acc[k].printed_dev, cur[k].printed_dev);
    acc[k].resolved_dev = std::max(acc[k].resolved_dev, cur[k].resolved_dev);
    acc[k].scale = std::max(acc[k].scale, cur[k].scale);
    acc[k].printed_ok = acc[k].printed_ok && cur[k].printed_ok;
    acc[k].resolved_ok = acc[k].resolved_ok && cur[k].resolved_ok;
  }
}

}  // namespace

BracketReport verify_brackets(const Model& model, std::size_t n_states, std::uint64_t seed) {
  BracketReport report;
  report.background = std::string(to_string(model.field.kind()));
  report.states = n_states;
  report.seed = seed;
  const std::vector<BracketPair> families{BracketPair::xx, BracketPair::xP, BracketPair::PP,
                                          BracketPair::SS, BracketPair::Sx, BracketPair::SP};
  for (auto pair : families) report.pairs.push_back({pair, all_components(pair).size(), 0.0, 0.0});
  const auto targets = defining_targets();
  const Observable T3 = obs::T3(), T4 = obs::T4();

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < n_states; ++s) {
    const PhaseState z = random_constrained_state(rng, model);
    const DiracStructure ds(z, model);
    const DiracCoefficients co = dirac_coefficients(z, model);

    const Gradient g3 = T3.gradient(z, model), g4 = T4.gradient(z, model);
    for (const auto& X : targets) {
      const Gradient gx = X.gradient(z, model);
      report.defining_residual = std::max(
          {report.defining_residual, std::abs(ds.bracket(g3, gx)), std::abs(ds.bracket(g4, gx))});
    }

    for (auto& row : report.pairs)
      for (const auto& id : all_components(row.pair)) {
        const auto [A, B] = id.observables();
        const Gradient ga = A.gradient(z, model), gb = B.gradient(z, model);
        const double direct = ds.bracket(ga, gb);
        report.antisymmetry = std::max(report.antisymmetry, std::abs(direct + ds.bracket(gb, ga)));
        const double scale = 1.0 + std::abs(direct);
        row.adjudicated = std::max(
            row.adjudicated,
            std::abs(dirac_bracket_closed(id, co, model, FormulaVariant::adjudicated) - direct) /
                scale);
        row.printed = std::max(
            row.printed,
            std::abs(dirac_bracket_closed(id, co, model, FormulaVariant::printed) - direct) / scale);
      }

    merge_table(report.table, auxiliary_bracket_table(z, model));
  }
  return report;
}

std::vector<Adjudication> closed_form_adjudications() {
  return {
      {"Delta^{mu nu}", "contains an undefined symbol v", "v = 0"},
      {"{S,S}", "L^{mu nu [alpha} P^{beta]} only",
       "adds the partner -(L^{alpha beta [mu} P^{nu]})"},
      {"{S,x}", "+L^{mu nu j} / 2", "-L^{mu nu j} / 2"},
      {"{P,P}", "F^{[ik} K^{kj]}", "F^{ik} K^{kj} - F^{jk} K^{ki}"},
      {"{P^i,T3}", "empty numerator over 8 in the d_i(SF) term", "g / 8"},
      {"{P^0,T3}", "g/8 for d(SF) and mu for the F^{0i} term", "g/4 and g"},
      {"{P^0,T4}", "g/8 for d(SF) and g/2 for the F^{0i} term", "g/4 and g"},
  };
}

bool FreeLimitCheck::passed(double tol) const {
  return quoted_rest_residual < tol && exact_moving_residual < tol &&
         std::abs(rest_value - rest_expected) < tol;
}

FreeLimitCheck free_limit_check(const Particle& particle, std::size_t n_states,
                                std::uint64_t seed) {
  const Model model{particle, make_background(BackgroundKind::zero, {})};
  const Particle& pt = model.particle;
  FreeLimitCheck out;
  std::mt19937_64 rng(seed);
  const auto xx = [&](const PhaseState& z, std::size_t i, std::size_t j) {
    const DiracStructure ds(z, model);
    return ds.bracket(obs::x(i).gradient(z, model), obs::x(j).gradient(z, model));
  };
  const auto check = [&](const PhaseState& z, bool at_rest) {
    const AntisymTensor4 S = spin_tensor(z);
    const FourVector P = calP(z, model);
    const double mc = pt.m * pt.c;
    for (std::size_t i = 1; i <= 3; ++i)
      for (std::size_t j = i + 1; j <= 3; ++j) {
        const double d = xx(z, i, j);
        const double quoted = S(i, j) / (2.0 * mc * P[0]);
        const double exact =
            (P[0] * S(i, j) + P[i] * S(j, 0) + P[j] * S(0, i)) / (2.0 * mc * mc * P[0]);
        if (at_rest)
          out.quoted_rest_residual = std::max(out.quoted_rest_residual, std::abs(d - quoted));
        else
          out.quoted_moving_deviation = std::max(out.quoted_moving_deviation, std::abs(d - quoted));
        out.exact_moving_residual = std::max(out.exact_moving_residual, std::abs(d - exact));
      }
  };
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (std::size_t s = 0; s < n_states; ++s) {
    const PhaseState moving = random_constrained_state(rng, model);
    check(moving, false);
    Vec3 dir = spin_vector(moving);
    const double norm = std::sqrt(dot3(dir, dir));
    for (auto& v : dir) v /= norm;
    check(init_state({U(rng), U(rng), U(rng)}, {0.0, 0.0, 0.0}, dir, model), true);
  }
  const PhaseState rest = init_state({0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, model);
  check(rest, true);
  out.rest_value = xx(rest, 1, 2);
  out.rest_expected = std::sqrt(pt.alpha) / (pt.m * pt.m * pt.c * pt.c);
  return out;
}

}  // namespace ncspin
