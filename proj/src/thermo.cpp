#include "stirling/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stirling/errors.hpp"

namespace stirling {

namespace {

// Square root of a positive semidefinite operator; eigenvalues in
// [-1e-10, 0) are rounding residue from propagation and are clamped to 0.
Operator psd_sqrt(const Operator& a) {
  const Spectrum spec = hermitian_eig(a);
  if (spec.values.front() < -1e-10) {
    throw DomainError("psd_sqrt: eigenvalue " + std::to_string(spec.values.front()) +
                      " is negative beyond tolerance");
  }
  const std::size_t n = a.dim();
  Operator out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(spec.values[k], 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += spec.vectors(i, k) * root * std::conj(spec.vectors(j, k));
      }
    }
  }
  return out.hermitian_part();
}

}  // namespace

BathTemperature::BathTemperature(double kT) : kT_(kT) {
  if (!(kT > 0.0) || !std::isfinite(kT)) {
    throw DomainError("BathTemperature: kT must be positive and finite, got " + std::to_string(kT));
  }
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
  if (!op_.is_hermitian(1e-10)) throw DomainError("DensityMatrix: operator is not Hermitian");
  const cplx tr = op_.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw DomainError("DensityMatrix: trace " + std::to_string(tr.real()) + " differs from 1");
  }
  const Spectrum spec = hermitian_eig(op_);
  if (spec.values.front() < -1e-10) {
    throw DomainError("DensityMatrix: negative eigenvalue " + std::to_string(spec.values.front()));
  }
}

DensityMatrix DensityMatrix::from_normalised(const Operator& op) {
  Operator h = op.hermitian_part();
  const double tr = h.trace().real();
  h *= 1.0 / tr;
  return DensityMatrix(std::move(h), Unchecked{});
}

std::vector<double> boltzmann_populations(const std::vector<double>& energies, BathTemperature t) {
  const double ground = *std::min_element(energies.begin(), energies.end());
  std::vector<double> pops(energies.size());
  double z = 0.0;
  for (std::size_t k = 0; k < energies.size(); ++k) {
    pops[k] = std::exp(-(energies[k] - ground) / t.kT());
    z += pops[k];
  }
  for (auto& p : pops) p /= z;
  return pops;
}

DensityMatrix gibbs_state(const Operator& h, BathTemperature t) {
  const Spectrum spec = hermitian_eig(h);
  const std::vector<double> pops = boltzmann_populations(spec.values, t);
  const std::size_t n = h.dim();
  Operator rho(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = spec.vector(k);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) rho(i, j) += pops[k] * v[i] * std::conj(v[j]);
    }
  }
  return DensityMatrix::from_normalised(rho);
}

double internal_energy(const DensityMatrix& rho, const Operator& h) {
  if (rho.dim() != h.dim()) {
    throw DimensionMismatch("internal_energy: state has dim " + std::to_string(rho.dim()) +
                            ", Hamiltonian has dim " + std::to_string(h.dim()));
  }
  const cplx u = (rho.op() * h).trace();
  if (std::abs(u.imag()) > 1e-10 * std::max(1.0, std::abs(u.real()))) {
    throw DomainError("internal_energy: Tr[rho h] has imaginary part " + std::to_string(u.imag()));
  }
  return u.real();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Spectrum spec = hermitian_eig(rho.op());
  double s = 0.0;
  for (double p : spec.values) {
    if (p > 1e-15) s -= p * std::log(p);
  }
  return std::clamp(s, 0.0, std::log(static_cast<double>(rho.dim())));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity: dimensions differ");
  const Operator root = psd_sqrt(rho.op());
  const Operator inner = (root * sigma.op() * root).hermitian_part();
  const double f = std::pow(psd_sqrt(inner).trace().real(), 2);
  return std::clamp(f, 0.0, 1.0);
}

double trace_distance(const Operator& a, const Operator& b) {
  const Spectrum spec = hermitian_eig((a - b).hermitian_part());
  double sum = 0.0;
  for (double x : spec.values) sum += std::abs(x);
  return 0.5 * sum;
}

}  // namespace stirling
