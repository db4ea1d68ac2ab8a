#pragma once

// First-order fine structure of hydrogen-like levels from the expanded
// quantum Hamiltonian, with closed-form radial integrals and a numerical
// radial-equation oracle.

#include <string>
#include <vector>

namespace ncspin {

enum class SpinOrbitCoupling { shifted, naive };  // coefficient g - 1 or g

std::string to_string(SpinOrbitCoupling c);
SpinOrbitCoupling parse_spin_orbit_coupling(const std::string& name);

struct HydrogenParams {
  int n_max = 4;
  double g = 2.0;
  double m = 1.0;
  double c = 10.0;
  double alpha_fs = 1.0 / 137.035999;
  double hbar = 1.0;
  SpinOrbitCoupling coupling = SpinOrbitCoupling::shifted;

  /// Electron in eV: m c^2 = 510998.95 eV with c = hbar = 1.
  static HydrogenParams physical(double g = 2.0);
  void validate() const;

  double coulomb_k() const { return alpha_fs * hbar * c; }   // V = -k / r
  double bohr_radius() const;                                // hbar^2 / (m k)
  double rest_energy() const { return m * c * c; }
  double spin_orbit_factor() const;                          // g - 1 or g
};

struct HydrogenLevel {
  int n = 0;
  int l = 0;
  double j = 0.0;
  double kinetic = 0.0;
  double spin_orbit = 0.0;
  double zeeman = 0.0;
  double total = 0.0;
  double sommerfeld = 0.0;
  double deviation = 0.0;  // |total - sommerfeld| / |sommerfeld|
  double total_alpha4 = 0.0;  // total in units of alpha^4 m c^2
};

/// Bohr energy -k / (2 a n^2).
double bohr_energy(int n, const HydrogenParams& p);
/// -(m c^2 alpha^4 / 2 n^4) (n / (j + 1/2) - 3/4)
double sommerfeld_shift(int n, double j, const HydrogenParams& p);

struct RadialExpectations {
  double energy = 0.0;
  double inv_r = 0.0;
  double inv_r2 = 0.0;
  double inv_r3 = 0.0;   // infinite for l = 0
  double p4 = 0.0;
};

/// Closed-form hydrogen radial expectation values.
RadialExpectations closed_form_expectations(int n, int l, const HydrogenParams& p);

struct RadialGrid {
  int points = 20001;   // odd, for Simpson integration
  double r_min_over_a = 1e-10;
};

/// Numerov solution of the radial equation on a logarithmic grid; energy by
/// node-count bisection, <p^4> as 4m^2 <(E - V)^2>.
RadialExpectations numerical_expectations(int n, int l, const HydrogenParams& p,
                                          const RadialGrid& grid = {});

/// Shift of one (n, l, j) level. Throws InvalidArgument for invalid numbers.
HydrogenLevel fine_structure_level(int n, int l, double j, const HydrogenParams& p);

/// Every level with n <= n_max and l >= 1, ordered by n, l, j.
std::vector<HydrogenLevel> hydrogen_fine_structure(const HydrogenParams& p);

/// E(n, l, l + 1/2) - E(n, l, l - 1/2).
double fine_splitting(int n, int l, const HydrogenParams& p);

}  // namespace ncspin
