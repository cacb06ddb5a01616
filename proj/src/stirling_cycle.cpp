#include "stirling/stirling_cycle.hpp"

#include <algorithm>
#include <exception>
#include <numbers>
#include <string>
#include <thread>

#include "stirling/errors.hpp"

namespace stirling {

namespace {

CyclePoint make_corner(CornerLabel label, const Operator& h, double theta, BathTemperature t) {
  DensityMatrix state = gibbs_state(h, t);
  const double u = internal_energy(state, h);
  const double s = von_neumann_entropy(state);
  return CyclePoint{label, theta, t.kT(), std::move(state), u, s};
}

}  // namespace

CycleResult run_cycle(const SpinPairParams& params, double theta1, double theta2,
                      BathTemperature hot, BathTemperature cold) {
  if (hot.kT() < cold.kT()) {
    throw InvalidTemperatures("run_cycle: hot bath kT " + std::to_string(hot.kT()) +
                              " is below cold bath kT " + std::to_string(cold.kT()));
  }
  const Operator h1 = build_hamiltonian(params, theta1).total;
  const Operator h2 = build_hamiltonian(params, theta2).total;

  CycleResult res;
  res.corners.reserve(4);
  res.corners.push_back(make_corner(CornerLabel::A, h1, theta1, hot));
  res.corners.push_back(make_corner(CornerLabel::B, h2, theta2, hot));
  res.corners.push_back(make_corner(CornerLabel::C, h2, theta2, cold));
  res.corners.push_back(make_corner(CornerLabel::D, h1, theta1, cold));
  const CyclePoint& a = res.corners[0];
  const CyclePoint& b = res.corners[1];
  const CyclePoint& c = res.corners[2];
  const CyclePoint& d = res.corners[3];

  res.q_ab = hot.kT() * (b.entropy - a.entropy);
  res.q_bc = c.energy - b.energy;
  res.q_cd = cold.kT() * (d.entropy - c.entropy);
  res.q_da = a.energy - d.energy;
  res.q_in = res.q_ab + res.q_da;
  res.q_out = res.q_bc + res.q_cd;
  res.work = res.q_in + res.q_out;
  if (res.q_in > 0.0) {
    res.mode = EngineMode::Engine;
    res.efficiency = res.work / res.q_in;
  }
  return res;
}

std::vector<CycleResult> sweep_theta2(const SpinPairParams& params, double theta1,
                                      const std::vector<double>& theta2_grid, BathTemperature hot,
                                      BathTemperature cold) {
  if (theta2_grid.empty()) throw DomainError("sweep_theta2: empty grid");
  constexpr double kTol = 1e-12;
  for (double t2 : theta2_grid) {
    if (t2 < -kTol || t2 > std::numbers::pi / 2 + kTol) {
      throw DomainError("sweep_theta2: theta2 " + std::to_string(t2) + " outside [0, pi/2]");
    }
  }
  // Points are independent; each worker fills a strided subset of the
  // pre-sized output so the result order never depends on scheduling.
  std::vector<CycleResult> out(theta2_grid.size());
  std::vector<std::exception_ptr> errors(theta2_grid.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, theta2_grid.size());
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < theta2_grid.size(); i += workers) {
          try {
            out[i] = run_cycle(params, theta1, theta2_grid[i], hot, cold);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

CycleResult secular_comparison(SpinPairParams params, double theta1, double theta2,
                               BathTemperature hot, BathTemperature cold, double high_field_mT) {
  params.secular = true;
  params.B0 = high_field_mT;
  return run_cycle(params, theta1, theta2, hot, cold);
}

std::vector<double> linear_grid(double start, double stop, std::size_t count) {
  if (count == 0) throw DomainError("linear_grid: count must be >= 1");
  std::vector<double> grid(count);
  if (count == 1) {
    grid[0] = start;
    return grid;
  }
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) grid[i] = start + step * static_cast<double>(i);
  grid.back() = stop;
  return grid;
}

}  // namespace stirling
