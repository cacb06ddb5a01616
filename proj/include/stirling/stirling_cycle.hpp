#pragma once

// Quasistatic, non-regenerative quantum Stirling cycle driven by the dipolar
// orientation angle:
//
//   A (theta1, hot) -> B (theta2, hot)   isothermal, Q_AB = kT_hot (S_B - S_A)
//   B -> C (theta2, cold)                isochoric,  Q_BC = U_C - U_B
//   C -> D (theta1, cold)                isothermal, Q_CD = kT_cold (S_D - S_C)
//   D -> A                               isochoric,  Q_DA = U_A - U_D
//
// Every corner is a Gibbs state. Heats are in peV.

#include <array>
#include <vector>

#include "stirling/spin_model.hpp"
#include "stirling/thermo.hpp"

namespace stirling {

enum class CornerLabel { A, B, C, D };

struct CyclePoint {
  CornerLabel label;
  double theta;
  double kT;
  DensityMatrix state;
  double energy;   ///< U, peV
  double entropy;  ///< S, units of k_B
};

enum class EngineMode { Engine, NonEngine };

struct CycleResult {
  double q_ab = 0.0;
  double q_bc = 0.0;
  double q_cd = 0.0;
  double q_da = 0.0;
  double q_in = 0.0;   ///< Q1 = Q_AB + Q_DA
  double q_out = 0.0;  ///< Q2 = Q_BC + Q_CD
  double work = 0.0;   ///< W = Q1 + Q2
  /// W / Q1 when the cycle absorbs heat; 0 otherwise (mode == NonEngine).
  double efficiency = 0.0;
  EngineMode mode = EngineMode::NonEngine;
  std::vector<CyclePoint> corners;  ///< A, B, C, D in order
};

/// Throws InvalidTemperatures unless hot >= cold.
CycleResult run_cycle(const SpinPairParams& params, double theta1, double theta2,
                      BathTemperature hot, BathTemperature cold);

/// One cycle per theta2 in grid order. Grid values must lie in [0, pi/2].
std::vector<CycleResult> sweep_theta2(const SpinPairParams& params, double theta1,
                                      const std::vector<double>& theta2_grid, BathTemperature hot,
                                      BathTemperature cold);

/// run_cycle under the secular Hamiltonian at the given field (default 1 T).
CycleResult secular_comparison(SpinPairParams params, double theta1, double theta2,
                               BathTemperature hot, BathTemperature cold,
                               double high_field_mT = 1000.0);

/// `count` evenly spaced points on [start, stop]; count == 1 gives {start}.
std::vector<double> linear_grid(double start, double stop, std::size_t count);

}  // namespace stirling
