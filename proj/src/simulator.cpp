#include "orient/simulator.hpp"

#include "orient/rng.hpp"

namespace orient {

namespace {

// Angular velocity over the (k-1, k] interval, from the segment that sample
// k-1 falls in: n_stationary samples at rest, then n_per_rotation samples of
// constant-rate rotation about body x, y, z in turn.
Vec3 segment_rate(int sample, const SimConfig& cfg) {
  const int cycle_len = cfg.n_stationary + 3 * cfg.n_per_rotation;
  const int local = sample % cycle_len;
  if (local < cfg.n_stationary) return {0, 0, 0};
  const int axis = (local - cfg.n_stationary) / cfg.n_per_rotation;
  const double rate =
      2.0 * M_PI / (cfg.n_per_rotation * cfg.sample_time());
  switch (axis) {
    case 0: return {rate, 0, 0};
    case 1: return {0, rate, 0};
    default: return {0, 0, rate};
  }
}

}  // namespace

GroundTruth generate_trajectory(const SimConfig& cfg) {
  const int n = cfg.n_samples();
  const double dt = cfg.sample_time();
  GroundTruth truth;
  truth.t.resize(n);
  truth.q.resize(n);
  truth.omega.resize(n);

  truth.t[0] = 0.0;
  truth.q[0] = Quaternion::identity();
  truth.omega[0] = {0, 0, 0};
  for (int k = 1; k < n; ++k) {
    truth.t[k] = k * dt;
    truth.omega[k] = segment_rate(k - 1, cfg);
    truth.q[k] =
        quat_mul(truth.q[k - 1], quat_exp(0.5 * dt * truth.omega[k]));
  }
  return truth;
}

MeasurementLog synthesize_measurements(const GroundTruth& truth,
                                       const SimConfig& cfg) {
  const int n = static_cast<int>(truth.q.size());
  MeasurementLog log;
  log.samples.resize(n);
  log.acc_outlier.assign(n, 0);
  log.mag_outlier.assign(n, 0);

  auto rng = make_rng(cfg.seed, /*stream=*/0);
  GaussianSampler gauss(rng);
  const Vec3 m_n{std::cos(cfg.dip), 0.0, -std::sin(cfg.dip)};

  for (int k = 0; k < n; ++k) {
    const RotMat r_bn = quat_to_rotmat(quat_conj(truth.q[k]));
    const Vec3 g_b = r_bn * Vec3{0, 0, 1};
    const Vec3 m_b = r_bn * m_n;
    ImuSample& s = log.samples[k];
    s.t = truth.t[k];
    s.gyro = truth.omega[k] +
             cfg.sigma_omega * Vec3{gauss(), gauss(), gauss()};
    s.acc = -g_b + cfg.sigma_acc * Vec3{gauss(), gauss(), gauss()};
    s.mag = m_b + cfg.sigma_mag * Vec3{gauss(), gauss(), gauss()};
  }
  return log;
}

MeasurementLog inject_outliers(const MeasurementLog& log,
                               const SimConfig& cfg) {
  MeasurementLog out = log;
  if (cfg.outlier_prob <= 0.0) return out;

  auto rng = make_rng(cfg.seed, /*stream=*/1);
  GaussianSampler gauss(rng);
  const double scale = 0x1.0p-53;
  auto uniform01 = [&] { return static_cast<double>(rng() >> 11) * scale; };

  for (std::size_t k = 0; k < out.samples.size(); ++k) {
    if (uniform01() < cfg.outlier_prob) {
      out.samples[k].acc = {gauss(), gauss(), gauss()};
      out.acc_outlier[k] = 1;
    }
    if (uniform01() < cfg.outlier_prob) {
      out.samples[k].mag = {gauss(), gauss(), gauss()};
      out.mag_outlier[k] = 1;
    }
  }
  return out;
}

}  // namespace orient
