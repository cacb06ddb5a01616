#include "stirling/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stirling/errors.hpp"

namespace stirling {

namespace {

constexpr double kDegenerateGap = 1e-9;  // peV

std::vector<double> eigenbasis_populations(const Operator& rho, const Spectrum& spec) {
  const std::size_t n = rho.dim();
  std::vector<double> pops(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        sum += std::conj(spec.vectors(i, k)) * rho(i, j) * spec.vectors(j, k);
      }
    }
    pops[k] = sum.real();
  }
  return pops;
}

Operator projector_sum(const Spectrum& spec, const std::vector<std::size_t>& targets,
                       const std::vector<double>& weights) {
  const std::size_t n = spec.values.size();
  Operator out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t col = targets[k];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += weights[k] * spec.vectors(i, col) * std::conj(spec.vectors(j, col));
      }
    }
  }
  return out;
}

}  // namespace

double DissipatorSpec::rate(std::size_t from, std::size_t to) const {
  for (const auto& j : jumps) {
    if (j.from == from && j.to == to) return j.rate;
  }
  return 0.0;
}

DissipatorSpec build_dissipator(const Operator& h, BathTemperature bath, double gamma0) {
  if (!(gamma0 > 0.0)) throw DomainError("build_dissipator: gamma0 must be > 0");
  const Spectrum spec = hermitian_eig(h);
  const std::size_t n = h.dim();

  DissipatorSpec d;
  d.bath = bath;
  d.gamma0 = gamma0;
  d.energies = spec.values;
  d.decay = Operator(n);
  for (std::size_t from = 0; from < n; ++from) {
    for (std::size_t to = 0; to < n; ++to) {
      if (from == to) continue;
      const double released = spec.values[from] - spec.values[to];
      const double gap = std::abs(released);
      double rate = 0.5 * gamma0;
      if (gap >= kDegenerateGap) {
        const double x = gap / bath.kT();
        const double enhanced = gamma0 / -std::expm1(-x);  // gamma0 * Nbar
        rate = released > 0.0 ? enhanced : enhanced * std::exp(-x);
      }
      const auto ket = spec.vector(to);
      const auto bra = spec.vector(from);
      d.jumps.push_back({from, to, Operator::outer(ket, bra), rate});
      d.decay += cplx(rate) * Operator::outer(bra, bra);
    }
  }
  return d;
}

Operator lindblad_rhs(const Operator& rho, const Operator& h, const DissipatorSpec& d) {
  const cplx minus_i_over_hbar(0.0, -1.0 / units::kHbarPevNs);
  Operator out = minus_i_over_hbar * commutator(h, rho);
  out -= 0.5 * anticommutator(d.decay, rho);
  for (const auto& j : d.jumps) out += cplx(j.rate) * (j.op * rho * j.op.adjoint());
  return out;
}

DensityMatrix propagate(const DensityMatrix& rho0, const Operator& h, const DissipatorSpec& d,
                        double t, double dt, const PropagationObserver& observer) {
  if (t < 0.0) throw DomainError("propagate: negative duration");
  if (t == 0.0) return rho0;
  if (!(dt > 0.0)) throw DomainError("propagate: step must be > 0");
  const auto steps = static_cast<std::size_t>(std::ceil(t / std::min(dt, t) - 1e-9));
  const double step = t / static_cast<double>(steps);

  DensityMatrix rho = rho0;
  for (std::size_t s = 0; s < steps; ++s) {
    const Operator& y = rho.op();
    const Operator k1 = lindblad_rhs(y, h, d);
    const Operator k2 = lindblad_rhs(y + cplx(0.5 * step) * k1, h, d);
    const Operator k3 = lindblad_rhs(y + cplx(0.5 * step) * k2, h, d);
    const Operator k4 = lindblad_rhs(y + cplx(step) * k3, h, d);
    const Operator next = y + cplx(step / 6.0) * (k1 + cplx(2.0) * k2 + cplx(2.0) * k3 + k4);
    rho = DensityMatrix::from_normalised(next);
    const double lowest = hermitian_eig(rho.op()).values.front();
    if (lowest < -1e-6) {
      throw StepError("propagate: eigenvalue " + std::to_string(lowest) + " after step " +
                      std::to_string(s) + "; reduce dt");
    }
    if (observer) observer(step * static_cast<double>(s + 1), rho);
  }
  return rho;
}

std::vector<std::size_t> match_eigenvectors(const Spectrum& old_spec, const Spectrum& new_spec) {
  const std::size_t n = old_spec.values.size();
  std::vector<std::vector<double>> overlap(n, std::vector<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += std::conj(new_spec.vectors(i, j)) * old_spec.vectors(i, k);
      }
      overlap[k][j] = std::abs(sum);
    }
  }
  std::vector<std::size_t> match(n, n);
  std::vector<bool> taken(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    double best = -1.0;
    std::size_t best_old = 0;
    std::size_t best_new = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (match[k] != n) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (taken[j]) continue;
        if (overlap[k][j] > best + 1e-12) {
          best = overlap[k][j];
          best_old = k;
          best_new = j;
        }
      }
    }
    match[best_old] = best_new;
    taken[best_new] = true;
  }
  return match;
}

DensityMatrix adiabatic_map(const DensityMatrix& rho, const Operator& h_old, const Operator& h_new) {
  if (h_old.dim() != h_new.dim() || rho.dim() != h_old.dim()) {
    throw DimensionMismatch("adiabatic_map: dimensions differ");
  }
  const Spectrum old_spec = hermitian_eig(h_old);
  const Spectrum new_spec = hermitian_eig(h_new);
  const std::vector<double> pops = eigenbasis_populations(rho.op(), old_spec);
  const std::vector<std::size_t> match = match_eigenvectors(old_spec, new_spec);
  return DensityMatrix::from_normalised(projector_sum(new_spec, match, pops));
}

double slowest_relaxation_rate(const DissipatorSpec& d) {
  const std::size_t n = d.energies.size();
  std::vector<double> escape(n, 0.0);
  for (const auto& j : d.jumps) escape[j.from] += j.rate;

  Operator symmetric(n);
  for (std::size_t m = 0; m < n; ++m) {
    symmetric(m, m) = -escape[m];
    for (std::size_t k = 0; k < n; ++k) {
      if (k != m) symmetric(m, k) = std::sqrt(d.rate(k, m) * d.rate(m, k));
    }
  }
  const Spectrum pop_modes = hermitian_eig(symmetric);
  double slowest = std::numeric_limits<double>::infinity();
  if (n > 1) slowest = -pop_modes.values[n - 2];  // top eigenvalue is the stationary 0
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = m + 1; k < n; ++k) {
      slowest = std::min(slowest, 0.5 * (escape[m] + escape[k]));
    }
  }
  return slowest;
}

double calibrate_gamma0(const Operator& h, BathTemperature bath, double relaxation_time_ns) {
  if (!(relaxation_time_ns > 0.0)) throw DomainError("calibrate_gamma0: time must be > 0");
  const double unit_rate = slowest_relaxation_rate(build_dissipator(h, bath, 1.0));
  return 1.0 / (relaxation_time_ns * unit_rate);
}

void IsothermalProtocol::validate() const {
  if (iterations < 1) throw DomainError("IsothermalProtocol: iterations must be >= 1");
  if (!(tau_adiabatic >= 0.0) || !(tau_isochoric >= 0.0)) {
    throw DomainError("IsothermalProtocol: stroke durations must be >= 0");
  }
  params.validate();
}

double IsothermalProtocol::theta_at(std::size_t n) const {
  if (n == iterations) return theta_end;
  return theta_start +
         static_cast<double>(n) * (theta_end - theta_start) / static_cast<double>(iterations);
}

double calibrate_gamma0(const IsothermalProtocol& protocol, double relaxation_time_ns) {
  protocol.validate();
  double gamma0 = 0.0;
  for (std::size_t n = 0; n <= protocol.iterations; ++n) {
    const Operator h = build_hamiltonian(protocol.params, protocol.theta_at(n)).total;
    gamma0 = std::max(gamma0, calibrate_gamma0(h, protocol.bath, relaxation_time_ns));
  }
  return gamma0;
}

double isochoric_step(double tau_isochoric, double gamma0) {
  return std::min(tau_isochoric / 200.0, 0.05 / gamma0);
}

std::vector<IterationRecord> run_isothermal(const IsothermalProtocol& protocol, double gamma0) {
  protocol.validate();
  if (!(gamma0 > 0.0)) throw DomainError("run_isothermal: gamma0 must be > 0");

  const Operator h_final = build_hamiltonian(protocol.params, protocol.theta_end).total;
  const DensityMatrix gibbs_final = gibbs_state(h_final, protocol.bath);

  auto record = [&](std::size_t index, double theta, const Operator& h, const DensityMatrix& rho) {
    const Spectrum spec = hermitian_eig(h);
    const DensityMatrix gibbs_now = gibbs_state(h, protocol.bath);
    return IterationRecord{index,
                           theta,
                           rho,
                           fidelity(rho, gibbs_now),
                           fidelity(rho, gibbs_final),
                           eigenbasis_populations(rho.op(), spec),
                           spec.values};
  };

  std::vector<IterationRecord> out;
  out.reserve(protocol.iterations + 1);
  Operator h_prev = build_hamiltonian(protocol.params, protocol.theta_start).total;
  DensityMatrix rho = gibbs_state(h_prev, protocol.bath);
  out.push_back(record(0, protocol.theta_start, h_prev, rho));

  const double dt = isochoric_step(protocol.tau_isochoric, gamma0);
  for (std::size_t n = 1; n <= protocol.iterations; ++n) {
    const double theta = protocol.theta_at(n);
    Operator h = build_hamiltonian(protocol.params, theta).total;
    rho = adiabatic_map(rho, h_prev, h);
    if (protocol.tau_isochoric > 0.0) {
      const DissipatorSpec d = build_dissipator(h, protocol.bath, gamma0);
      rho = propagate(rho, h, d, protocol.tau_isochoric, dt);
    }
    out.push_back(record(n, theta, h, rho));
    h_prev = std::move(h);
  }
  return out;
}

PowerEstimate estimate_power(double w_max_pev, const IsothermalProtocol& protocol) {
  protocol.validate();
  if (!std::isfinite(w_max_pev)) throw DomainError("estimate_power: non-finite work");
  const double n = static_cast<double>(protocol.iterations);
  const double t_ns = 2.0 * n * (protocol.tau_adiabatic + protocol.tau_isochoric) +
                      2.0 * protocol.tau_isochoric;
  if (!(t_ns > 0.0)) throw DomainError("estimate_power: cycle time must be > 0");
  return PowerEstimate{t_ns * 1e-6, w_max_pev * units::kJoulePerPev / (t_ns * 1e-9)};
}

}  // namespace stirling
