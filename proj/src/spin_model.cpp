#include "stirling/spin_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "stirling/errors.hpp"

namespace stirling {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// gamma/2pi in MHz/T -> gamma in rad s^-1 T^-1
double angular_gamma(double gamma_over_2pi_mhz) { return kTwoPi * gamma_over_2pi_mhz * 1e6; }

double joule_to_pev(double joules) { return joules / units::kJoulePerPev; }

struct SpinOps {
  Operator zI = pauli_operator(PauliAxis::Z, Site::I);
  Operator zS = pauli_operator(PauliAxis::Z, Site::S);
  Operator xI = pauli_operator(PauliAxis::X, Site::I);
  Operator xS = pauli_operator(PauliAxis::X, Site::S);
  Operator yI = pauli_operator(PauliAxis::Y, Site::I);
  Operator yS = pauli_operator(PauliAxis::Y, Site::S);
  Operator pI = pauli_operator(PauliAxis::Plus, Site::I);
  Operator pS = pauli_operator(PauliAxis::Plus, Site::S);
  Operator mI = pauli_operator(PauliAxis::Minus, Site::I);
  Operator mS = pauli_operator(PauliAxis::Minus, Site::S);
};

const SpinOps& spin_ops() {
  static const SpinOps ops;
  return ops;
}

}  // namespace

void SpinPairParams::validate() const {
  if (!(B0 >= 0.0)) throw DomainError("SpinPairParams: B0 must be >= 0, got " + std::to_string(B0));
  if (!(r > 0.0)) throw DomainError("SpinPairParams: r must be > 0, got " + std::to_string(r));
}

double dipolar_constant(const SpinPairParams& params) {
  if (!(params.r > 0.0)) {
    throw DomainError("dipolar_constant: r must be > 0, got " + std::to_string(params.r));
  }
  const double r_m = params.r * 1e-10;
  const double b = -units::kMu0Over4Pi * angular_gamma(params.gamma_I_over_2pi) *
                   angular_gamma(params.gamma_S_over_2pi) * units::kHbarJouleSecond /
                   (r_m * r_m * r_m);
  return joule_to_pev(units::kHbarJouleSecond * b);
}

HamiltonianTerms build_hamiltonian(const SpinPairParams& params, double theta) {
  params.validate();
  const SpinOps& op = spin_ops();
  const cplx i(0.0, 1.0);

  const double field_t = params.B0 * 1e-3;
  const double zeeman_I = joule_to_pev(units::kHbarJouleSecond * field_t *
                                       angular_gamma(params.gamma_I_over_2pi));
  const double zeeman_S = joule_to_pev(units::kHbarJouleSecond * field_t *
                                       angular_gamma(params.gamma_S_over_2pi));

  HamiltonianTerms terms;
  terms.theta = theta;
  terms.zeeman = -0.5 * (cplx(zeeman_I) * op.zI + cplx(zeeman_S) * op.zS);

  // (pi hbar J / 2) with J in Hz
  const double j_scale = joule_to_pev(0.5 * std::numbers::pi * units::kHbarJouleSecond * params.J);
  const Operator zz = op.zI * op.zS;
  terms.j_coupling = params.secular ? cplx(j_scale) * zz
                                    : cplx(j_scale) * (op.xI * op.xS + op.yI * op.yS + zz);

  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double zonal = 1.0 - 3.0 * c * c;
  const cplx e_minus = std::exp(-i * params.phi);
  const cplx e_plus = std::exp(i * params.phi);

  Operator alphabet = cplx(zonal * 0.25) * zz;  // A1
  if (!params.secular) {
    const double tilt = -0.75 * std::sin(2.0 * theta);
    const double transverse = -0.75 * s * s;
    alphabet += cplx(zonal * -0.25) * (op.pI * op.mS + op.mI * op.pS);                    // A2
    alphabet += tilt * e_minus * (0.5 * (op.zI * op.pS) + 0.5 * (op.pI * op.zS));        // A3
    alphabet += tilt * e_plus * (0.5 * (op.zI * op.mS) + 0.5 * (op.mI * op.zS));         // A4
    alphabet += transverse * e_minus * e_minus * (op.pI * op.pS);                         // A5
    alphabet += transverse * e_plus * e_plus * (op.mI * op.mS);                           // A6
  }
  terms.dipolar = cplx(-dipolar_constant(params)) * alphabet;

  terms.total = terms.zeeman + terms.j_coupling + terms.dipolar;
  return terms;
}

std::vector<SpectrumPoint> spectrum_scan(const SpinPairParams& params,
                                         const std::vector<double>& thetas) {
  if (thetas.empty()) throw DomainError("spectrum_scan: empty angle list");
  std::vector<SpectrumPoint> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    out.push_back({theta, hermitian_eig(build_hamiltonian(params, theta).total).values});
  }
  return out;
}

}  // namespace stirling
