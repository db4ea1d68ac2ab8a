#include "ncspin/backgrounds.hpp"

#include <cmath>
#include <sstream>

namespace ncspin {

namespace {

bool all_finite(const Vec3& v) {
  return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

}  // namespace

std::string_view to_string(BackgroundKind kind) {
  switch (kind) {
    case BackgroundKind::zero: return "zero";
    case BackgroundKind::uniform_e: return "uniform-e";
    case BackgroundKind::uniform_b: return "uniform-b";
    case BackgroundKind::crossed: return "crossed";
    case BackgroundKind::coulomb: return "coulomb";
  }
  return "unknown";
}

BackgroundKind parse_background_kind(std::string_view name) {
  for (auto kind : {BackgroundKind::zero, BackgroundKind::uniform_e, BackgroundKind::uniform_b,
                    BackgroundKind::crossed, BackgroundKind::coulomb})
    if (to_string(kind) == name) return kind;
  throw InvalidArgument("unknown background kind '" + std::string(name) + "'");
}

FieldBackground::FieldBackground(BackgroundKind kind, const BackgroundParams& params)
    : kind_(kind), params_(params) {
  if (!all_finite(params.E) || !all_finite(params.B) || !std::isfinite(params.q) ||
      !std::isfinite(params.r_min))
    throw InvalidArgument("background parameters must be finite");
  if (!all_finite(params.gauge.linear))
    throw InvalidArgument("gauge parameters must be finite");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!all_finite(params.gauge.quadratic[i]))
      throw InvalidArgument("gauge parameters must be finite");
    for (std::size_t j = 0; j < 3; ++j)
      if (params.gauge.quadratic[i][j] != params.gauge.quadratic[j][i])
        throw InvalidArgument("quadratic gauge matrix must be symmetric");
  }
  // Drop parameters the kind does not use.
  switch (kind) {
    case BackgroundKind::zero:
      params_.E = {};
      params_.B = {};
      params_.q = 0.0;
      break;
    case BackgroundKind::uniform_e:
      params_.B = {};
      params_.q = 0.0;
      break;
    case BackgroundKind::uniform_b:
      params_.E = {};
      params_.q = 0.0;
      break;
    case BackgroundKind::crossed:
      params_.q = 0.0;
      break;
    case BackgroundKind::coulomb:
      if (params.q == 0.0) throw InvalidArgument("coulomb background requires q != 0");
      if (!(params.r_min > 0.0)) throw InvalidArgument("coulomb background requires r_min > 0");
      params_.E = {};
      params_.B = {};
      break;
  }
}

std::string FieldBackground::gauge_description() const {
  std::ostringstream out;
  switch (kind_) {
    case BackgroundKind::zero: out << "A=0"; break;
    case BackgroundKind::uniform_e:
    case BackgroundKind::uniform_b:
    case BackgroundKind::crossed: out << "A0=-E.x, A=(B x r)/2 (symmetric)"; break;
    case BackgroundKind::coulomb: out << "A0=q/r, A=0"; break;
  }
  const GaugeShift& g = params_.gauge;
  bool shifted = g.linear != Vec3{};
  for (const auto& row : g.quadratic) shifted = shifted || row != Vec3{};
  if (shifted) out << " + grad(chi)";
  return out.str();
}

std::array<AntisymTensor4, 4> FieldBackground::field_gradient(const FourVector& x) const {
  check_domain(x);
  std::array<AntisymTensor4, 4> dF{};
  if (kind_ != BackgroundKind::coulomb) return dF;
  const Vec3 r = x.spatial();
  const double r2 = dot3(r, r);
  const double r5 = r2 * r2 * std::sqrt(r2);
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i) {
      const double dEi = params_.q * ((i == j ? r2 : 0.0) - 3.0 * r[i] * r[j]) / r5;
      dF[j + 1].set(0, i + 1, dEi);
    }
  return dF;
}

FieldBackground make_background(BackgroundKind kind, const BackgroundParams& params) {
  return FieldBackground(kind, params);
}

std::pair<Vec3, Vec3> extract_EB(const AntisymTensor4& F) {
  Vec3 E{F(0, 1), F(0, 2), F(0, 3)};
  Vec3 B{F(2, 3), F(3, 1), F(1, 2)};
  return {E, B};
}

}  // namespace ncspin
