#pragma once

// Finite-time thermalization with a Davies-type Lindblad generator
//
//   d rho / dt = -(i/hbar) [H, rho] + sum_k rate_k (L_k rho L_k^dag - {L_k^dag L_k, rho} / 2)
//
// whose jump operators L = |m><n| connect every ordered pair of eigenstates of
// H. Rates obey detailed balance, so the Gibbs state of (H, kT) is a fixed
// point. Time is in ns, rates in 1/ns, energies in peV.

#include <cstddef>
#include <functional>
#include <vector>

#include "stirling/spin_model.hpp"
#include "stirling/thermo.hpp"

namespace stirling {

struct JumpTerm {
  std::size_t from = 0;  ///< eigenstate index n (ascending energy)
  std::size_t to = 0;    ///< eigenstate index m
  Operator op;           ///< |m><n|
  double rate = 0.0;     ///< 1/ns
};

struct DissipatorSpec {
  std::vector<JumpTerm> jumps;
  BathTemperature bath{1.0};
  double gamma0 = 0.0;
  std::vector<double> energies;  ///< eigenvalues of the reference Hamiltonian
  /// sum_k rate_k L_k^dag L_k, cached for the anticommutator term.
  Operator decay;

  /// Rate of the transition from eigenstate `from` to eigenstate `to`.
  double rate(std::size_t from, std::size_t to) const;
};

/// Downward rate gamma0 * Nbar(dE), upward gamma0 * Nbar(dE) * exp(-dE/kT)
/// with Nbar(dE) = 1 / (1 - exp(-dE/kT)); pairs closer than 1e-9 peV get a
/// symmetric gamma0 / 2. Throws DomainError for gamma0 <= 0.
DissipatorSpec build_dissipator(const Operator& h, BathTemperature bath, double gamma0);

/// Right-hand side of the master equation.
Operator lindblad_rhs(const Operator& rho, const Operator& h, const DissipatorSpec& d);

/// Called after every accepted step with the elapsed time and the state.
using PropagationObserver = std::function<void(double, const DensityMatrix&)>;

/// Fixed-step RK4 integration to time t. The step is t / ceil(t / dt) so the
/// final time is hit exactly. Each step is re-Hermitized and renormalised;
/// an eigenvalue below -1e-6 raises StepError.
DensityMatrix propagate(const DensityMatrix& rho0, const Operator& h, const DissipatorSpec& d,
                        double t, double dt, const PropagationObserver& observer = {});

/// Idealized adiabatic stroke: populations in the eigenbasis of h_old are
/// carried onto the eigenvectors of h_new with maximal overlap; coherences are
/// dropped.
DensityMatrix adiabatic_map(const DensityMatrix& rho, const Operator& h_old, const Operator& h_new);

/// Greedy maximal-overlap assignment. Entry k is the index of the new
/// eigenvector that inherits old eigenvector k.
std::vector<std::size_t> match_eigenvectors(const Spectrum& old_spec, const Spectrum& new_spec);

/// Slowest non-zero relaxation rate (1/ns) of the generator. Populations
/// follow a classical rate matrix, symmetrized by detailed balance; each
/// eigenbasis coherence decays at the mean of its two levels' escape rates.
double slowest_relaxation_rate(const DissipatorSpec& d);

/// gamma0 such that the slowest relaxation of build_dissipator(h, bath, .)
/// has a 1/e time of `relaxation_time_ns`.
double calibrate_gamma0(const Operator& h, BathTemperature bath, double relaxation_time_ns = 0.2);

struct IsothermalProtocol {
  double theta_start = 0.0;
  double theta_end = 0.0;
  std::size_t iterations = 250;
  double tau_adiabatic = 1e5;  ///< ns
  double tau_isochoric = 1.0;  ///< ns
  BathTemperature bath{100.0};
  SpinPairParams params{};

  /// Throws DomainError unless iterations >= 1 and both taus are >= 0.
  void validate() const;
  /// theta_start + n (theta_end - theta_start) / N
  double theta_at(std::size_t n) const;
};

/// Largest calibrate_gamma0 over the protocol's angle path, so every
/// isochoric stroke relaxes at least as fast as the target.
double calibrate_gamma0(const IsothermalProtocol& protocol, double relaxation_time_ns = 0.2);

struct IterationRecord {
  std::size_t index = 0;
  double theta = 0.0;
  DensityMatrix state;
  double fidelity_to_instantaneous_gibbs = 0.0;
  double fidelity_to_final_gibbs = 0.0;
  std::vector<double> populations;     ///< in the eigenbasis of H(theta), ascending energy
  std::vector<double> level_energies;  ///< peV
};

/// Iterated adiabatic + isochoric strokes from Gibbs(H(theta_start)). The
/// returned list holds N + 1 records: index 0 is the initial Gibbs state and
/// index n the state after iteration n.
std::vector<IterationRecord> run_isothermal(const IsothermalProtocol& protocol, double gamma0);

/// Integration step used by run_isothermal: min(tau_iso / 200, 0.05 / gamma0).
double isochoric_step(double tau_isochoric, double gamma0);

struct PowerEstimate {
  double t_cycle_ms = 0.0;
  double power_w = 0.0;  ///< J/s
};

/// t_cycle = 2 N (tau_adi + tau_iso) + 2 tau_iso; power = W / t_cycle.
PowerEstimate estimate_power(double w_max_pev, const IsothermalProtocol& protocol);

}  // namespace stirling
