// Benchmark: per-iteration cost of the three filters, and serial vs
// OpenMP-parallel Monte Carlo campaign wall time (identical summaries).

#include <chrono>
#include <cstdio>

#include "orient/evaluation.hpp"

using namespace orient;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

}  // namespace

int main() {
  std::printf("== per-iteration step cost (median over 2e5 iters) ==\n");
  for (FilterId id : {FilterId::Fast, FilterId::Madgwick, FilterId::Mekf}) {
    const double t = time_per_iteration(id, 200000);
    const auto ops = count_ops(id);
    if (ops)
      std::printf("%-10s %8.3f us/iter  %4llu ops/iter\n", filter_name(id),
                  t * 1e6, static_cast<unsigned long long>(*ops));
    else
      std::printf("%-10s %8.3f us/iter\n", filter_name(id), t * 1e6);
  }

  std::printf("\n== Monte Carlo campaign: serial vs OpenMP (30 runs) ==\n");
  SimConfig cfg;
  cfg.seed = 42;
  const int runs = 30;

  auto t0 = clock_type::now();
  const McSummary serial =
      run_monte_carlo(FilterId::Fast, cfg, runs, /*parallel=*/false);
  const double t_serial = seconds_since(t0);

  t0 = clock_type::now();
  const McSummary par =
      run_monte_carlo(FilterId::Fast, cfg, runs, /*parallel=*/true);
  const double t_par = seconds_since(t0);

  const bool identical = serial.rmse_deg == par.rmse_deg;
  std::printf("serial   %7.3f s   rmse (%.4f, %.4f, %.4f)\n", t_serial,
              serial.rmse_deg[0], serial.rmse_deg[1], serial.rmse_deg[2]);
  std::printf("parallel %7.3f s   rmse (%.4f, %.4f, %.4f)\n", t_par,
              par.rmse_deg[0], par.rmse_deg[1], par.rmse_deg[2]);
  std::printf("speedup %.2fx, summaries %s\n", t_serial / t_par,
              identical ? "identical" : "DIFFER");
  return identical ? 0 : 1;
}
