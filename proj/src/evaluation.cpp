#include "orient/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "orient/fast_filter.hpp"
#include "orient/madgwick.hpp"
#include "orient/mekf.hpp"
#include "orient/opcount.hpp"

namespace orient {

namespace {

constexpr double kRad2Deg = 180.0 / M_PI;

FilterConfig fast_config(const SimConfig& cfg) {
  return FilterConfig::make(cfg.sample_time(),
                            beta_from_gyro_sigma(cfg.sigma_omega), cfg.dip);
}

MadgwickParams madgwick_config(const SimConfig& cfg) {
  return MadgwickParams::make(cfg.sample_time(),
                              madgwick_gain_from_gyro_sigma(cfg.sigma_omega),
                              cfg.dip);
}

bool has_init_error(const SimConfig& cfg) {
  return norm(cfg.init_error) > 0.0;
}

}  // namespace

const char* filter_name(FilterId id) {
  switch (id) {
    case FilterId::Fast: return "fast";
    case FilterId::Madgwick: return "madgwick";
    case FilterId::Mekf: return "mekf";
  }
  return "?";
}

std::optional<FilterId> filter_from_name(const std::string& name) {
  if (name == "fast") return FilterId::Fast;
  if (name == "madgwick") return FilterId::Madgwick;
  if (name == "mekf") return FilterId::Mekf;
  return std::nullopt;
}

std::vector<Quaternion> run_filter(FilterId id, const MeasurementLog& log,
                                   const Quaternion& q_init,
                                   const SimConfig& cfg) {
  const int n = static_cast<int>(log.samples.size());
  std::vector<Quaternion> est(n);
  est[0] = q_init;

  switch (id) {
    case FilterId::Fast: {
      const FilterConfig fc = fast_config(cfg);
      FilterState st{q_init};
      for (int k = 1; k < n; ++k) {
        const ImuSample& s = log.samples[k];
        st = step(st, s.gyro, s.acc, s.mag, fc);
        est[k] = st.q_report;
      }
      break;
    }
    case FilterId::Madgwick: {
      const MadgwickParams mp = madgwick_config(cfg);
      MadgwickState st{q_init};
      for (int k = 1; k < n; ++k) {
        const ImuSample& s = log.samples[k];
        st = madgwick_step(st, s.gyro, s.acc, s.mag, mp);
        est[k] = st.q_report;
      }
      break;
    }
    case FilterId::Mekf: {
      const MekfConfig mc = MekfConfig::simulation(
          cfg.sample_time(), cfg.sigma_omega, cfg.sigma_acc, cfg.sigma_mag,
          cfg.dip);
      MekfState st;
      st.q_hat = q_init;
      const double p0 = has_init_error(cfg)
                            ? (M_PI / 2) * (M_PI / 2) / 3.0
                            : 1e-6;
      st.P = p0 * Eigen::Matrix3d::Identity();
      for (int k = 1; k < n; ++k) {
        const ImuSample& s = log.samples[k];
        // The estimate for sample k is the gyro-propagated prediction; the
        // accelerometer/magnetometer update feeds the next step, matching the
        // reporting convention of the gradient-based filters.
        st = mekf_predict(st, s.gyro, mc);
        est[k] = st.q_hat;
        st = mekf_update(st, s.acc, s.mag, mc);
      }
      break;
    }
  }
  return est;
}

std::array<double, 3> rmse_euler(const std::vector<Quaternion>& estimates,
                                 const GroundTruth& truth, int skip) {
  const int n = static_cast<int>(truth.q.size());
  if (static_cast<int>(estimates.size()) != n)
    throw LengthMismatch("rmse_euler: estimate/truth length mismatch");
  if (skip < 0 || skip >= n)
    throw LengthMismatch("rmse_euler: skip out of range");

  std::array<double, 3> sumsq{0, 0, 0};
  for (int k = skip; k < n; ++k) {
    const Quaternion err = quat_mul(quat_conj(truth.q[k]), estimates[k]);
    const EulerAngles e = quat_to_euler(err);
    sumsq[0] += e.roll * e.roll;
    sumsq[1] += e.pitch * e.pitch;
    sumsq[2] += e.yaw * e.yaw;
  }
  const double count = n - skip;
  return {kRad2Deg * std::sqrt(sumsq[0] / count),
          kRad2Deg * std::sqrt(sumsq[1] / count),
          kRad2Deg * std::sqrt(sumsq[2] / count)};
}

RunReport evaluate_run(FilterId id, const SimConfig& cfg,
                       std::uint64_t run_seed) {
  SimConfig local = cfg;
  local.seed = run_seed;

  const GroundTruth truth = generate_trajectory(local);
  MeasurementLog log = synthesize_measurements(truth, local);
  if (local.outlier_prob > 0.0) log = inject_outliers(log, local);

  Quaternion q_init = truth.q[0];
  if (has_init_error(local))
    q_init = quat_mul(q_init, quat_exp(0.5 * local.init_error));

  const std::vector<Quaternion> est = run_filter(id, log, q_init, local);

  RunReport report;
  report.filter = id;
  const int n = static_cast<int>(est.size());
  report.euler_err_deg.resize(n);
  report.angle_err_deg.resize(n);
  for (int k = 0; k < n; ++k) {
    const Quaternion err = quat_mul(quat_conj(truth.q[k]), est[k]);
    const EulerAngles e = quat_to_euler(err);
    report.euler_err_deg[k] = {kRad2Deg * e.roll, kRad2Deg * e.pitch,
                               kRad2Deg * e.yaw};
    report.angle_err_deg[k] = kRad2Deg * rotation_angle(truth.q[k], est[k]);
  }
  report.rmse_deg = rmse_euler(est, truth, 0);
  return report;
}

namespace {

struct RunAccum {
  std::array<double, 3> sumsq{0, 0, 0};
  int count = 0;
  std::vector<double> angle_curve;
};

std::vector<RunAccum> run_all(FilterId id, const SimConfig& cfg, int n_runs,
                              int horizon, bool parallel) {
  std::vector<RunAccum> acc(n_runs);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
  for (int run = 0; run < n_runs; ++run) {
    const RunReport r = evaluate_run(id, cfg, cfg.seed + run);
    RunAccum& a = acc[run];
    a.count = static_cast<int>(r.euler_err_deg.size());
    for (const auto& e : r.euler_err_deg)
      for (int i = 0; i < 3; ++i) a.sumsq[i] += e[i] * e[i];
    if (horizon > 0) {
      a.angle_curve.assign(r.angle_err_deg.begin(),
                           r.angle_err_deg.begin() + horizon);
    }
  }
  (void)parallel;
  return acc;
}

}  // namespace

McSummary run_monte_carlo(FilterId id, const SimConfig& cfg, int n_runs,
                          bool parallel) {
  const auto acc = run_all(id, cfg, n_runs, /*horizon=*/0, parallel);
  McSummary summary;
  summary.n_runs = n_runs;
  std::array<double, 3> sumsq{0, 0, 0};
  long total = 0;
  for (const RunAccum& a : acc) {  // fixed order: deterministic aggregation
    for (int i = 0; i < 3; ++i) sumsq[i] += a.sumsq[i];
    total += a.count;
  }
  for (int i = 0; i < 3; ++i)
    summary.rmse_deg[i] = std::sqrt(sumsq[i] / static_cast<double>(total));
  return summary;
}

McSummary convergence_curves(FilterId id, const SimConfig& cfg, int n_runs,
                             int horizon, bool parallel) {
  if (horizon > cfg.n_samples())
    throw LengthMismatch("convergence_curves: horizon exceeds run length");
  const auto acc = run_all(id, cfg, n_runs, horizon, parallel);

  McSummary summary;
  summary.n_runs = n_runs;
  std::array<double, 3> sumsq{0, 0, 0};
  long total = 0;
  summary.curve_mean.assign(horizon, 0.0);
  summary.curve_lo.assign(horizon, 0.0);
  summary.curve_hi.assign(horizon, 0.0);
  for (const RunAccum& a : acc) {
    for (int i = 0; i < 3; ++i) sumsq[i] += a.sumsq[i];
    total += a.count;
    for (int k = 0; k < horizon; ++k) summary.curve_mean[k] += a.angle_curve[k];
  }
  for (int i = 0; i < 3; ++i)
    summary.rmse_deg[i] = std::sqrt(sumsq[i] / static_cast<double>(total));
  for (int k = 0; k < horizon; ++k) summary.curve_mean[k] /= n_runs;
  for (int k = 0; k < horizon; ++k) {
    double var = 0.0;
    for (const RunAccum& a : acc) {
      const double d = a.angle_curve[k] - summary.curve_mean[k];
      var += d * d;
    }
    const double sd = n_runs > 1 ? std::sqrt(var / (n_runs - 1)) : 0.0;
    summary.curve_lo[k] = summary.curve_mean[k] - 2.0 * sd;
    summary.curve_hi[k] = summary.curve_mean[k] + 2.0 * sd;
  }
  return summary;
}

namespace {

// Generic inputs: non-degenerate orientation and measurements, nonzero dip,
// gradient guard not triggered.
template <class S>
struct CountFixture {
  QuatT<S> q;
  Vec3T<S> y_omega{S(0.12), S(-0.23), S(0.31)};
  Vec3T<S> y_a{S(-0.21), S(0.36), S(-0.90)};
  Vec3T<S> y_m{S(0.81), S(0.12), S(-0.47)};
  CountFixture() {
    q = normalize(QuatT<S>{S(0.9), {S(0.2), S(-0.3), S(0.15)}});
  }
};

}  // namespace

std::optional<std::uint64_t> count_ops(FilterId id) {
  using S = CountedScalar;
  CountFixture<S> fx;
  switch (id) {
    case FilterId::Fast: {
      const auto cfg = FilterConfigT<S>::make(S(0.1), S(0.26), S(0.2));
      FilterStateT<S> st{fx.q};
      CountedScalar::reset();
      st = step(st, fx.y_omega, fx.y_a, fx.y_m, cfg);
      return CountedScalar::count();
    }
    case FilterId::Madgwick: {
      const auto cfg = MadgwickParamsT<S>::make(S(0.1), S(0.13), S(0.2));
      MadgwickStateT<S> st{fx.q};
      CountedScalar::reset();
      st = madgwick_step(st, fx.y_omega, fx.y_a, fx.y_m, cfg);
      return CountedScalar::count();
    }
    case FilterId::Mekf:
      return std::nullopt;  // Eigen-backed, not instrumented
  }
  return std::nullopt;
}

namespace {

template <class Body>
double median_chunk_time(std::uint64_t n_iters, Body&& body) {
  using clock = std::chrono::steady_clock;
  const std::uint64_t chunk = 1000;
  const std::uint64_t n_chunks = std::max<std::uint64_t>(n_iters / chunk, 3);
  // warm-up
  for (std::uint64_t i = 0; i < chunk; ++i) body();
  std::vector<double> per(n_chunks);
  for (std::uint64_t c = 0; c < n_chunks; ++c) {
    const auto t0 = clock::now();
    for (std::uint64_t i = 0; i < chunk; ++i) body();
    const auto t1 = clock::now();
    per[c] = std::chrono::duration<double>(t1 - t0).count() /
             static_cast<double>(chunk);
  }
  std::nth_element(per.begin(), per.begin() + per.size() / 2, per.end());
  return per[per.size() / 2];
}

}  // namespace

double time_per_iteration(FilterId id, std::uint64_t n_iters) {
  CountFixture<double> fx;
  volatile double sink = 0.0;
  double t = 0.0;
  switch (id) {
    case FilterId::Fast: {
      const auto cfg = FilterConfig::make(0.1, 0.26, 0.2);
      FilterState st{fx.q};
      t = median_chunk_time(n_iters, [&] {
        st = step(st, fx.y_omega, fx.y_a, fx.y_m, cfg);
      });
      sink = st.q_hat.q0;
      break;
    }
    case FilterId::Madgwick: {
      const auto cfg = MadgwickParams::make(0.1, 0.13, 0.2);
      MadgwickState st{fx.q};
      t = median_chunk_time(n_iters, [&] {
        st = madgwick_step(st, fx.y_omega, fx.y_a, fx.y_m, cfg);
      });
      sink = st.q_hat.q0;
      break;
    }
    case FilterId::Mekf: {
      const auto cfg = MekfConfig::simulation(0.1, 0.0873, 0.01, 0.01, 0.2);
      MekfState st;
      st.q_hat = fx.q;
      st.P = 1e-4 * Eigen::Matrix3d::Identity();
      t = median_chunk_time(n_iters, [&] {
        st = mekf_predict(st, fx.y_omega, cfg);
        st = mekf_update(st, fx.y_a, fx.y_m, cfg);
      });
      sink = st.q_hat.q0;
      break;
    }
  }
  (void)sink;
  return t;
}

}  // namespace orient
