#pragma once

#include <vector>

#include "stirling/operator.hpp"

namespace stirling {

/// k_B T in peV.
class BathTemperature {
 public:
  /// Throws DomainError unless kT > 0 and finite.
  explicit BathTemperature(double kT);
  double kT() const { return kT_; }

 private:
  double kT_;
};

/// Unit-trace, Hermitian, positive semidefinite operator.
class DensityMatrix {
 public:
  /// Validates the invariants (Hermitian, trace 1 within 1e-10, eigenvalues
  /// >= -1e-10) and throws DomainError on violation.
  explicit DensityMatrix(Operator op);

  /// Hermitizes and renormalises the trace without further checks. For
  /// integrator output that is known to be valid up to rounding.
  static DensityMatrix from_normalised(const Operator& op);

  const Operator& op() const { return op_; }
  std::size_t dim() const { return op_.dim(); }

 private:
  struct Unchecked {};
  DensityMatrix(Operator op, Unchecked) : op_(std::move(op)) {}
  Operator op_;
};

/// exp(-h / kT) / Z, evaluated in the eigenbasis of h with the ground energy
/// shifted to zero.
DensityMatrix gibbs_state(const Operator& h, BathTemperature t);

/// Boltzmann populations of ascending energies; the building block of gibbs_state.
std::vector<double> boltzmann_populations(const std::vector<double>& energies, BathTemperature t);

/// Tr[rho h] in the units of h.
double internal_energy(const DensityMatrix& rho, const Operator& h);

/// -Tr[rho ln rho] in units of k_B.
double von_neumann_entropy(const DensityMatrix& rho);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// (1/2) sum |eigenvalues of (a - b)|.
double trace_distance(const Operator& a, const Operator& b);

}  // namespace stirling
