#pragma once

#include "ncspin/backgrounds.hpp"

namespace ncspin {

/// Probe particle in Gaussian-like units with e and c explicit.
struct Particle {
  double m = 1.0;
  double e = 1.0;
  double c = 10.0;
  double g = 2.0;
  double hbar = 1.0;
  double alpha = 0.75;  // spin value parameter, 3 hbar^2 / 4 for spin one-half

  static Particle spin_half(double m, double e, double c, double g, double hbar = 1.0) {
    return {m, e, c, g, hbar, 0.75 * hbar * hbar};
  }

  void validate() const;
};

/// A particle in a background; every physics routine takes one of these.
struct Model {
  Particle particle{};
  FieldBackground field{};
};

}  // namespace ncspin
