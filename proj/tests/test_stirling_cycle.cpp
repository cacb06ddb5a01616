#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "stirling/errors.hpp"
#include "stirling/stirling_cycle.hpp"

using namespace stirling;

namespace {

constexpr double kPi = std::numbers::pi;
const BathTemperature kHot(100.0);
const BathTemperature kCold(50.0);

double heat_sum(const CycleResult& c) { return c.q_ab + c.q_bc + c.q_cd + c.q_da; }

// Secular levels written out by hand: the Hamiltonian is diagonal in the
// product basis with sigma_z eigenvalues sI, sS = +-1.
std::vector<double> secular_levels(const SpinPairParams& p, double theta) {
  const double hbar = 1.054571817e-34;
  const double peV = 1.602176634e-31;
  const double zI = hbar * 2 * kPi * p.gamma_I_over_2pi * 1e6 * p.B0 * 1e-3 / peV;
  const double zS = hbar * 2 * kPi * p.gamma_S_over_2pi * 1e6 * p.B0 * 1e-3 / peV;
  const double j = 0.5 * kPi * hbar * p.J / peV;
  const double r = p.r * 1e-10;
  const double hb = -1e-7 * (2 * kPi * p.gamma_I_over_2pi * 1e6) * (2 * kPi * p.gamma_S_over_2pi * 1e6) * hbar *
                    hbar / (r * r * r) / peV;
  const double c = std::cos(theta);
  std::vector<double> levels;
  for (int sI : {1, -1}) {
    for (int sS : {1, -1}) {
      levels.push_back(-0.5 * (zI * sI + zS * sS) + j * sI * sS - hb * (1 - 3 * c * c) * 0.25 * sI * sS);
    }
  }
  return levels;
}

}  // namespace

TEST_CASE("run_cycle degenerate configurations") {
  const SpinPairParams p;
  SUBCASE("theta1 == theta2 does no work") {
    const CycleResult c = run_cycle(p, 0.6, 0.6, kHot, kCold);
    CHECK(c.q_ab == 0.0);
    CHECK(c.q_cd == 0.0);
    CHECK(c.work == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(c.q_bc + c.q_da) < 1e-12);
  }
  SUBCASE("single reservoir does no work") {
    const CycleResult c = run_cycle(p, 0.0, kPi / 2, kHot, kHot);
    CHECK(std::abs(c.work) <= 1e-9);
  }
  SUBCASE("invalid temperatures") {
    CHECK_THROWS_AS(run_cycle(p, 0.0, 1.0, kCold, kHot), InvalidTemperatures);
    CHECK_THROWS_AS(BathTemperature(0.0), DomainError);
  }
}

TEST_CASE("run_cycle at the default working point") {
  const CycleResult c = run_cycle(SpinPairParams{}, 0.0, kPi / 2, kHot, kCold);
  CHECK(c.mode == EngineMode::Engine);
  CHECK(c.work >= 13.1);
  CHECK(c.work <= 16.0);
  CHECK(c.efficiency >= 0.225);
  CHECK(c.efficiency <= 0.275);
  CHECK(c.efficiency < 0.5);
  CHECK(c.q_in == doctest::Approx(c.q_ab + c.q_da).epsilon(1e-15));
  CHECK(c.q_out == doctest::Approx(c.q_bc + c.q_cd).epsilon(1e-15));
  CHECK(c.q_da > 0.0);
  CHECK(c.q_cd < 0.0);

  REQUIRE(c.corners.size() == 4);
  CHECK(c.corners[0].label == CornerLabel::A);
  CHECK(c.corners[1].theta == kPi / 2);
  CHECK(c.corners[2].kT == 50.0);
  CHECK(c.corners[3].theta == 0.0);
}

TEST_CASE("cycle invariants on random working points") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2);
  std::uniform_real_distribution<double> temp(1.0, 500.0);
  std::uniform_real_distribution<double> field(0.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    SpinPairParams p;
    p.B0 = field(rng);
    p.phi = angle(rng);
    const double t1 = angle(rng);
    const double t2 = angle(rng);
    double a = temp(rng), b = temp(rng);
    if (a < b) std::swap(a, b);
    const CycleResult c = run_cycle(p, t1, t2, BathTemperature(a), BathTemperature(b));
    CHECK(std::abs(heat_sum(c) - c.work) <= 1e-9);
    if (c.mode == EngineMode::Engine && c.work > 0.0) CHECK(c.efficiency <= 1.0 - b / a + 1e-9);
    if (c.mode == EngineMode::NonEngine) CHECK(c.efficiency == 0.0);

    const CycleResult reversed = run_cycle(p, t2, t1, BathTemperature(a), BathTemperature(b));
    CHECK(std::abs(reversed.work + c.work) <= 1e-9);

    // Corner A recomputed from scratch is bit-identical.
    const Operator h1 = build_hamiltonian(p, t1).total;
    CHECK(internal_energy(gibbs_state(h1, BathTemperature(a)), h1) == c.corners[0].energy);
  }
}

TEST_CASE("sweep_theta2 curve shapes") {
  const SpinPairParams p;
  const std::vector<double> grid = linear_grid(0.0, kPi / 2, 91);
  for (double theta1 : {0.0, kPi / 6, kPi / 4, kPi / 3}) {
    const auto results = sweep_theta2(p, theta1, grid, kHot, kCold);
    REQUIRE(results.size() == grid.size());
    double prev_w = -1e300;
    double prev_eta = -1e300;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& r = results[i];
      CHECK(r.corners[1].theta == grid[i]);
      if (grid[i] <= theta1 + 1e-12) {
        CHECK(r.work <= 1e-9);
      } else {
        CHECK(r.work >= prev_w - 1e-9);
        CHECK(r.efficiency >= prev_eta - 1e-9);
        prev_w = r.work;
        prev_eta = r.efficiency;
      }
      if (r.work > 0.0) CHECK(r.efficiency <= 0.5);
    }
    CHECK(results.back().work == doctest::Approx(prev_w));
  }
  CHECK_THROWS_AS(sweep_theta2(p, 0.0, {}, kHot, kCold), DomainError);
  CHECK_THROWS_AS(sweep_theta2(p, 0.0, {2.0}, kHot, kCold), DomainError);
}

TEST_CASE("sweep results do not depend on scheduling") {
  const SpinPairParams p;
  const std::vector<double> grid = linear_grid(0.0, kPi / 2, 37);
  const auto a = sweep_theta2(p, 0.2, grid, kHot, kCold);
  for (std::size_t i = 0; i < grid.size(); i += 5) {
    const CycleResult single = run_cycle(p, 0.2, grid[i], kHot, kCold);
    CHECK(single.work == a[i].work);
    CHECK(single.efficiency == a[i].efficiency);
  }
}

TEST_CASE("secular high-field comparison") {
  const CycleResult c = secular_comparison(SpinPairParams{}, 0.0, kPi / 2, kHot, kCold);
  CHECK(std::abs(c.work) < 0.01);
  CHECK(c.mode == EngineMode::NonEngine);

  SUBCASE("low field, non-secular path is the ordinary cycle") {
    const CycleResult a = run_cycle(SpinPairParams{}, 0.0, kPi / 2, kHot, kCold);
    SpinPairParams p;
    p.B0 = 1.0;
    const CycleResult b = run_cycle(p, 0.0, kPi / 2, kHot, kCold);
    CHECK(a.work == b.work);
  }

  SUBCASE("heats match a scalar four-level implementation") {
    // Fields low enough that every level is populated, so the check is not
    // trivially zero.
    for (double b0 : {1.0, 3.0, 1000.0}) {
      for (double t2 : {0.3, kMagicAngle, kPi / 2}) {
        SpinPairParams p;
        p.secular = true;
        p.B0 = b0;
        const CycleResult c = run_cycle(p, 0.0, t2, kHot, kCold);
        const auto a = oracle::scalar_thermo(secular_levels(p, 0.0), 100.0);
        const auto b = oracle::scalar_thermo(secular_levels(p, t2), 100.0);
        const auto cc = oracle::scalar_thermo(secular_levels(p, t2), 50.0);
        const auto d = oracle::scalar_thermo(secular_levels(p, 0.0), 50.0);
        CHECK(std::abs(c.corners[0].entropy - a.entropy) <= 1e-9);
        CHECK(std::abs(c.corners[2].entropy - cc.entropy) <= 1e-9);
        CHECK(std::abs(c.q_ab - 100.0 * (b.entropy - a.entropy)) <= 1e-9);
        CHECK(std::abs(c.q_bc - (cc.energy - b.energy)) <= 1e-9);
        CHECK(std::abs(c.q_cd - 50.0 * (d.entropy - cc.entropy)) <= 1e-9);
        CHECK(std::abs(c.q_da - (a.energy - d.energy)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("linear_grid") {
  const auto g = linear_grid(0.0, kPi / 2, 91);
  CHECK(g.size() == 91);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == kPi / 2);
  CHECK(g[45] == doctest::Approx(kPi / 4));
  CHECK(linear_grid(1.0, 2.0, 1) == std::vector<double>{1.0});
  CHECK_THROWS_AS(linear_grid(0.0, 1.0, 0), DomainError);
}
