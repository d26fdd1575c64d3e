#pragma once

#include <cstdint>
#include <vector>

#include "orient/rotmath.hpp"

// Monte Carlo scenario generator: ground-truth trajectory (stationary phase
// followed by 360-degree rotations about each body axis, repeated), noisy
// measurement synthesis from the sensor models, and optional outlier
// injection into the accelerometer/magnetometer channels.

namespace orient {

struct SimConfig {
  double fs = 10.0;           // sampling rate (Hz)
  int n_stationary = 200;     // samples at rest per cycle
  int n_per_rotation = 200;   // samples per 360-degree rotation
  int n_cycles = 10;
  double dip = 0.0;           // rad
  double sigma_omega = 5.0 * M_PI / 180.0;  // rad/s
  double sigma_acc = 0.01;    // on the normalized signal
  double sigma_mag = 0.01;
  double outlier_prob = 0.0;  // per sample, per sensor
  std::uint64_t seed = 0;
  Vec3 init_error{0, 0, 0};   // rotation vector (rad) applied to the true
                              // initial orientation before init of filters

  double sample_time() const { return 1.0 / fs; }
  int n_samples() const {
    return n_cycles * (n_stationary + 3 * n_per_rotation);
  }
};

struct ImuSample {
  double t = 0.0;
  Vec3 gyro;  // rad/s
  Vec3 acc;   // normalized
  Vec3 mag;   // normalized
};

struct GroundTruth {
  std::vector<double> t;
  std::vector<Quaternion> q;   // q_nb
  std::vector<Vec3> omega;     // omega[k] drives the k-1 -> k transition
};

struct MeasurementLog {
  std::vector<ImuSample> samples;
  std::vector<std::uint8_t> acc_outlier;
  std::vector<std::uint8_t> mag_outlier;
};

/// Exact-integration ground truth for the rotation scenario.
GroundTruth generate_trajectory(const SimConfig& cfg);

/// Gaussian-noise measurements, deterministic for a given cfg.seed.
MeasurementLog synthesize_measurements(const GroundTruth& truth,
                                       const SimConfig& cfg);

/// Replaces accel/mag samples with N(0, I) draws with prob. cfg.outlier_prob,
/// independently per sample and per sensor. Gyro is never touched.
MeasurementLog inject_outliers(const MeasurementLog& log, const SimConfig& cfg);

}  // namespace orient
