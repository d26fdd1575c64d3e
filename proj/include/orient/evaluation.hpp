#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orient/simulator.hpp"

// Everything behind the result table and the convergence figure: running a
// filter over a measurement log, per-axis RMSE, Monte Carlo campaigns
// (OpenMP-parallel over runs, with a serial reference path that produces
// identical summaries), instrumented op counts and per-iteration timing.

namespace orient {

enum class FilterId { Fast, Madgwick, Mekf };

const char* filter_name(FilterId id);
std::optional<FilterId> filter_from_name(const std::string& name);

struct RunReport {
  FilterId filter = FilterId::Fast;
  std::array<double, 3> rmse_deg{};          // roll, pitch, yaw
  std::vector<std::array<double, 3>> euler_err_deg;  // per sample
  std::vector<double> angle_err_deg;         // per sample
};

struct McSummary {
  int n_runs = 0;
  std::array<double, 3> rmse_deg{};  // pooled over all samples of all runs
  // Convergence curves (filled by convergence_curves): per-sample mean and
  // mean +/- 2 std of the rotation-angle error across runs, in degrees.
  std::vector<double> curve_mean;
  std::vector<double> curve_lo;
  std::vector<double> curve_hi;
};

/// Runs one filter over a measurement log from the given initial estimate.
/// estimates[0] is the initial quaternion; samples 1..n-1 are filtered.
std::vector<Quaternion> run_filter(FilterId id, const MeasurementLog& log,
                                   const Quaternion& q_init,
                                   const SimConfig& cfg);

/// Per-axis RMSE (degrees) of the body-frame Euler error over samples >= skip.
std::array<double, 3> rmse_euler(const std::vector<Quaternion>& estimates,
                                 const GroundTruth& truth, int skip = 0);

RunReport evaluate_run(FilterId id, const SimConfig& cfg,
                       std::uint64_t run_seed);

/// Monte Carlo campaign; run k uses seed cfg.seed + k. Parallel and serial
/// paths produce identical summaries.
McSummary run_monte_carlo(FilterId id, const SimConfig& cfg, int n_runs,
                          bool parallel = true);

/// Mean/2-std rotation-angle error curves over the first `horizon` samples
/// (recovery from cfg.init_error).
McSummary convergence_curves(FilterId id, const SimConfig& cfg, int n_runs,
                             int horizon, bool parallel = true);

/// Dynamic arithmetic op count of one filter step on generic inputs (gradient
/// guard not triggered). Unavailable for the Eigen-backed MEKF.
std::optional<std::uint64_t> count_ops(FilterId id);

/// Median wall time of one filter step over n_iters warm iterations (s).
double time_per_iteration(FilterId id, std::uint64_t n_iters);

}  // namespace orient
