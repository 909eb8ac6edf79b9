#pragma once

#include <functional>
#include <optional>

#include "crn/balance.hpp"
#include "crn/model.hpp"

namespace crn {

struct StepTooLarge : Error {
  using Error::Error;
};
struct NonFiniteState : Error {
  using Error::Error;
};
struct NegativeStateAborted : Error {
  using Error::Error;
};
struct WindowTooShort : Error {
  using Error::Error;
};
struct NonPositiveWindow : Error {
  using Error::Error;
};

struct HistoryFunction {
  // Constant history when grid is empty; piecewise linear otherwise.
  std::vector<double> constant;
  std::vector<double> grid;                 // ascending, covers [-tau_max, 0]
  std::vector<std::vector<double>> values;  // one state per grid point

  static HistoryFunction constant_history(std::vector<double> x) {
    HistoryFunction h;
    h.constant = std::move(x);
    return h;
  }
  std::vector<double> at(double s) const;
};

struct TrajectoryState {
  double step_h = 0.0;
  std::size_t history_steps = 0;  // grid points before t=0
  std::vector<double> grid;       // t_{-H}..t_N
  std::vector<std::vector<double>> values;
  std::vector<std::size_t> delay_offsets;  // per-reaction lag in steps

  std::size_t index_of_time_zero() const { return history_steps; }
  const std::vector<double>& state_at_step(std::size_t k) const {
    return values[k];
  }
};

struct RunReport {
  double conservation_drift = 0.0;
  std::vector<double> lyapunov_times;
  std::vector<double> lyapunov_series;
  std::vector<double> min_concentration;  // over the final half of the run
  std::vector<double> terminal_state;
  double equilibrium_residual = 0.0;
  std::vector<std::string> warnings;
};

struct SimulationResult {
  TrajectoryState trajectory;
  RunReport report;
};

/// Classical RK4 method of steps on a fixed grid. Delays are rounded to
/// integer step multiples; half-stage delayed reads interpolate linearly.
SimulationResult simulate(const ReactionNetwork& net,
                          const HistoryFunction& psi, double t_end,
                          double step_h,
                          const std::vector<double>* lyapunov_ref = nullptr,
                          std::size_t sample_every = 100);

/// g of the compatibility-class map: window(0) + sum_i k_i (int window^y) y_i.
/// The window is sampled on [-tau_max, 0] with the given step.
std::vector<double> compute_g(const ReactionNetwork& net,
                              const std::function<std::vector<double>(double)>&
                                  window,
                              double window_span, double step_h);

/// Lyapunov-Krasovskii functional against equilibrium xbar, for a window
/// sampled on [-tau_max, 0].
double lyapunov_value(const ReactionNetwork& net,
                      const std::vector<double>& xbar,
                      const std::function<std::vector<double>(double)>& window,
                      double step_h);

struct ProbeSummary {
  std::size_t trials = 0;
  double min_over_trials = 0.0;  // min over trials of min final-half conc
  bool floor_breached = false;
  std::vector<std::vector<double>> terminal_states;
};

constexpr double kProbeFloor = 1e-6;

ProbeSummary persistence_probe(const ReactionNetwork& net, std::size_t trials,
                               double t_end, double step_h,
                               std::uint64_t seed);

}  // namespace crn
