#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <random>

#include "stirling/errors.hpp"
#include "stirling/operator.hpp"
#include "stirling/spin_model.hpp"

using namespace stirling;

namespace {

double reconstruction_error(const Operator& h, const Spectrum& s) {
  const Operator rebuilt = s.vectors * Operator::diagonal(s.values) * s.vectors.adjoint();
  return (rebuilt - h).frobenius_norm() / std::max(h.frobenius_norm(), 1e-300);
}

double unitarity_error(const Operator& v) {
  return max_abs_diff(v.adjoint() * v, Operator::identity(v.dim()));
}

}  // namespace

TEST_CASE("pauli operators use the I (x) S ordering with |up> first") {
  const Operator zI = pauli_operator(PauliAxis::Z, Site::I);
  const double z_diag[] = {1, 1, -1, -1};
  CHECK(zI == Operator::diagonal(z_diag));

  const Operator xS = pauli_operator(PauliAxis::X, Site::S);
  Operator expect_x(4);
  expect_x(0, 1) = expect_x(1, 0) = expect_x(2, 3) = expect_x(3, 2) = 1.0;
  CHECK(xS == expect_x);

  const Operator pI = pauli_operator(PauliAxis::Plus, Site::I);
  Operator expect_p(4);
  expect_p(0, 2) = expect_p(1, 3) = 1.0;
  CHECK(pI == expect_p);

  const cplx i(0.0, 1.0);
  for (Site site : {Site::I, Site::S}) {
    const Operator x = pauli_operator(PauliAxis::X, site);
    const Operator y = pauli_operator(PauliAxis::Y, site);
    CHECK(max_abs_diff(pauli_operator(PauliAxis::Plus, site), 0.5 * (x + i * y)) == 0.0);
    CHECK(max_abs_diff(pauli_operator(PauliAxis::Minus, site), 0.5 * (x - i * y)) == 0.0);
  }
}

TEST_CASE("tensor_product") {
  const Operator id2 = Operator::identity(2);
  CHECK(tensor_product(id2, id2) == Operator::identity(4));

  const Operator z = pauli2(PauliAxis::Z);
  const double zz_diag[] = {1, -1, -1, 1};
  CHECK(tensor_product(z, z) == Operator::diagonal(zz_diag));

  const Operator x = pauli2(PauliAxis::X);
  CHECK(tensor_product(x, id2) * tensor_product(id2, x) == tensor_product(x, x));

  SUBCASE("mixed product and trace identities on random inputs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
      const Operator a = oracle::random_hermitian(rng, 2);
      const Operator b = oracle::random_hermitian(rng, 3);
      const Operator c = oracle::random_hermitian(rng, 2);
      const Operator d = oracle::random_hermitian(rng, 3);
      CHECK(max_abs_diff(tensor_product(a, b) * tensor_product(c, d), tensor_product(a * c, b * d)) < 1e-12);
      CHECK(std::abs(tensor_product(a, b).trace() - a.trace() * b.trace()) < 1e-12);
    }
  }
}

TEST_CASE("hermitian_eig on simple inputs") {
  const double d[] = {4, 3, 2, 1};
  const Spectrum s = hermitian_eig(Operator::diagonal(d));
  CHECK(s.values == std::vector<double>{1, 2, 3, 4});
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(s.vectors(i, k) == cplx(i == 3 - k ? 1.0 : 0.0));
    }
  }

  const Spectrum sx = hermitian_eig(pauli2(PauliAxis::X));
  CHECK(sx.values[0] == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(sx.values[1] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  Operator a(2);
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(hermitian_eig(a), NotHermitian);
  CHECK_THROWS_AS(matrix_function(a, MatrixFunction::Exp), NotHermitian);
}

TEST_CASE("hermitian_eig matches the characteristic polynomial oracle at theta = pi/4") {
  const Operator h = build_hamiltonian(SpinPairParams{}, std::numbers::pi / 4).total;
  const auto coeffs = oracle::characteristic_polynomial(h);
  const auto roots = oracle::real_roots(coeffs, 1.5 * h.frobenius_norm());
  REQUIRE(roots.size() == 4);
  const Spectrum s = hermitian_eig(h);
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(s.values[k] - roots[k]) <= 1e-8 * std::abs(roots[k]));
  }
}

TEST_CASE("hermitian_eig invariants on random Hermitian matrices") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Operator h = oracle::random_hermitian(rng, n, trial % 2 ? 100.0 : 1.0);
    const Spectrum s = hermitian_eig(h);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    CHECK(unitarity_error(s.vectors) <= 1e-10);
    CHECK(reconstruction_error(h, s) <= 1e-10);
    double sum = 0.0;
    for (double x : s.values) sum += x;
    CHECK(std::abs(sum - h.trace().real()) <= 1e-10 * std::max(1.0, h.frobenius_norm()));
    const auto reference = oracle::eigen_eigenvalues(h);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(s.values[k] - reference[k]) <= 1e-10 * std::max(1.0, h.frobenius_norm()));
    }
  }
}

TEST_CASE("hermitian_eig is deterministic and canonicalises degenerate eigenspaces") {
  std::mt19937_64 rng(7);
  const Operator h = oracle::random_hermitian(rng, 4);
  const Spectrum a = hermitian_eig(h);
  const Spectrum b = hermitian_eig(h);
  CHECK(a.values == b.values);
  CHECK(a.vectors == b.vectors);

  SUBCASE("degenerate spectrum gives a basis independent of the input rotation") {
    // Two matrices with the same doubly degenerate eigenspaces but different
    // unitary mixing inside them must produce identical eigenvectors.
    const double d[] = {1.0, 1.0, 3.0, 3.0};
    const Operator diag = Operator::diagonal(d);
    const Operator q1 = oracle::from_eigen(
        Eigen::HouseholderQR<Eigen::MatrixXcd>(oracle::to_eigen(oracle::random_hermitian(rng, 4))).householderQ());
    Operator mix(4);
    const double c = std::cos(0.7), s = std::sin(0.7);
    mix(0, 0) = c;
    mix(0, 1) = -s;
    mix(1, 0) = s;
    mix(1, 1) = c;
    mix(2, 2) = cplx(0.0, 1.0);
    mix(3, 3) = 1.0;
    const Operator h1 = (q1 * diag * q1.adjoint()).hermitian_part();
    const Operator q2 = q1 * mix;
    const Operator h2 = (q2 * diag * q2.adjoint()).hermitian_part();
    const Spectrum s1 = hermitian_eig(h1);
    const Spectrum s2 = hermitian_eig(h2);
    CHECK(max_abs_diff(s1.vectors, s2.vectors) < 1e-10);
    CHECK(reconstruction_error(h1, s1) <= 1e-10);
  }

  SUBCASE("identity resolves to the standard basis") {
    const Spectrum s = hermitian_eig(Operator::identity(4));
    CHECK(s.vectors == Operator::identity(4));
  }
}

TEST_CASE("matrix_function") {
  const double d[] = {4, 9, 16, 25};
  const double r[] = {2, 3, 4, 5};
  CHECK(max_abs_diff(matrix_function(Operator::diagonal(d), MatrixFunction::Sqrt), Operator::diagonal(r)) < 1e-14);
  CHECK(max_abs_diff(matrix_function(Operator::zero(4), MatrixFunction::Exp), Operator::identity(4)) < 1e-15);

  SUBCASE("log inverts exp on random spectra in [-1, 1]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 50; ++trial) {
      const Operator a = oracle::random_hermitian_with_spectrum(rng, 4, -1.0, 1.0);
      const Operator back = matrix_function(matrix_function(a, MatrixFunction::Exp), MatrixFunction::Log);
      CHECK((back - a).frobenius_norm() <= 1e-9);
    }
  }

  SUBCASE("exp of a Hermitian matrix is Hermitian positive definite") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      const Operator e = matrix_function(oracle::random_hermitian(rng, 4), MatrixFunction::Exp);
      CHECK(e.is_hermitian(1e-14));
      CHECK(hermitian_eig(e).values.front() > 0.0);
    }
  }

  SUBCASE("domain handling for log and sqrt") {
    const double neg[] = {-1e-3, 1.0};
    CHECK_THROWS_AS(matrix_function(Operator::diagonal(neg), MatrixFunction::Sqrt), DomainError);
    CHECK_THROWS_AS(matrix_function(Operator::diagonal(neg), MatrixFunction::Log), DomainError);
    const double tiny[] = {-1e-13, 1.0};
    CHECK(matrix_function(Operator::diagonal(tiny), MatrixFunction::Sqrt)(0, 0) == cplx(0.0));
    const double singular[] = {0.0, 1.0};
    const Operator l = matrix_function(Operator::diagonal(singular), MatrixFunction::Log);
    CHECK(l.max_norm() == 0.0);
  }
}

TEST_CASE("matrix_function(exp) agrees with Eigen's matrix exponential") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Operator h = oracle::random_hermitian(rng, 4, 0.5);
    const Eigen::MatrixXcd reference = oracle::to_eigen(h).exp();
    CHECK(max_abs_diff(matrix_function(h, MatrixFunction::Exp), oracle::from_eigen(reference)) < 1e-12);
  }
}
