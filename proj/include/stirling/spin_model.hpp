#pragma once

// Two heteronuclear spin-1/2 nuclei in a static field along z, coupled by an
// isotropic J interaction and the full (non-secular) dipolar interaction.
//
// Energies are in peV, times in ns. Temperatures enter as k_B T in peV.

#include <cmath>
#include <numbers>
#include <vector>

#include "stirling/operator.hpp"

namespace stirling {

namespace units {
inline constexpr double kHbarJouleSecond = 1.054571817e-34;
inline constexpr double kPlanckJouleSecond = 6.62607015e-34;
inline constexpr double kJoulePerEv = 1.602176634e-19;
inline constexpr double kJoulePerPev = kJoulePerEv * 1e-12;
/// mu_0 / 4 pi in T m / A.
inline constexpr double kMu0Over4Pi = 1e-7;
/// hbar in peV ns (about 6.582e5).
inline constexpr double kHbarPevNs = kHbarJouleSecond / kJoulePerPev * 1e9;
}  // namespace units

struct SpinPairParams {
  double gamma_I_over_2pi = 42.577;  ///< MHz/T (1H)
  double gamma_S_over_2pi = 10.708;  ///< MHz/T (13C)
  double B0 = 1.0;                   ///< mT
  double J = 125.0;                  ///< Hz
  double r = 1.09;                   ///< Angstrom
  double phi = 0.0;                  ///< rad, azimuth of the internuclear vector
  bool secular = false;

  /// Throws DomainError unless B0 >= 0 and r > 0.
  void validate() const;
  friend bool operator==(const SpinPairParams&, const SpinPairParams&) = default;
};

struct HamiltonianTerms {
  Operator zeeman;
  Operator j_coupling;
  Operator dipolar;
  Operator total;
  double theta = 0.0;
};

/// hbar * b in peV with b = -(mu0/4pi) gamma_I gamma_S hbar / r^3. Negative
/// for two positive gyromagnetic ratios.
double dipolar_constant(const SpinPairParams& params);

/// H(theta) = H_Z + H_J + H_D(theta). In secular mode the dipolar part keeps
/// only the zz term A1 and the J part keeps only sigma_z sigma_z.
HamiltonianTerms build_hamiltonian(const SpinPairParams& params, double theta);

struct SpectrumPoint {
  double theta = 0.0;
  std::vector<double> energies;  ///< ascending, peV
};

std::vector<SpectrumPoint> spectrum_scan(const SpinPairParams& params,
                                         const std::vector<double>& thetas);

/// The magic angle arccos(1/sqrt(3)).
inline const double kMagicAngle = std::acos(1.0 / std::numbers::sqrt3);

}  // namespace stirling
