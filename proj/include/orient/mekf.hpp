#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "orient/errors.hpp"
#include "orient/rotmath.hpp"

// Multiplicative EKF baseline. The state is the current quaternion
// linearisation point plus the 3x3 covariance P of the rotation-vector
// deviation about it. Accelerometer and magnetometer are fused as one
// stacked 6-dimensional update per sample.

namespace orient {

struct MekfConfig {
  double sample_time = 0.1;
  double dip = 0.0;
  Eigen::Matrix3d Q_gyro = Eigen::Matrix3d::Zero();  // process noise (rad^2)
  Eigen::Matrix3d R_acc = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d R_mag = Eigen::Matrix3d::Zero();

  /// Simulation tuning: true noise covariances.
  static MekfConfig simulation(double sample_time, double sigma_omega,
                               double sigma_acc, double sigma_mag,
                               double dip = 0.0) {
    MekfConfig c;
    c.sample_time = sample_time;
    c.dip = dip;
    c.Q_gyro = sample_time * sample_time * sigma_omega * sigma_omega *
               Eigen::Matrix3d::Identity();
    c.R_acc = sigma_acc * sigma_acc * Eigen::Matrix3d::Identity();
    c.R_mag = sigma_mag * sigma_mag * Eigen::Matrix3d::Identity();
    return c;
  }

  /// Default tuning for experimental logs.
  static MekfConfig experimental(double sample_time, double dip = 0.0) {
    MekfConfig c;
    c.sample_time = sample_time;
    c.dip = dip;
    c.Q_gyro = 1.3e-3 * Eigen::Matrix3d::Identity();
    c.R_acc = 2.63e-2 * Eigen::Matrix3d::Identity();
    c.R_mag = 2.5e-2 * Eigen::Matrix3d::Identity();
    return c;
  }
};

struct MekfState {
  Quaternion q_hat = Quaternion::identity();
  Eigen::Matrix3d P = Eigen::Matrix3d::Zero();
};

namespace detail {

inline Eigen::Matrix3d to_eigen(const RotMat& r) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = r.m[i][j];
  return m;
}

inline Eigen::Matrix3d skew_eigen(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

}  // namespace detail

/// Time update: q <- q (.) exp_q(T/2 y_omega), deviation transported through
/// the rotation increment, P <- F P F' + Q with F = exp_R(-T y_omega).
inline MekfState mekf_predict(const MekfState& state, const Vec3& y_omega,
                              const MekfConfig& cfg) {
  MekfState next;
  const double half_t = 0.5 * cfg.sample_time;
  next.q_hat = quat_mul(state.q_hat, quat_exp(half_t * y_omega));
  const Eigen::Matrix3d f =
      detail::to_eigen(exp_rotmat(Vec3{-cfg.sample_time * y_omega.x,
                                       -cfg.sample_time * y_omega.y,
                                       -cfg.sample_time * y_omega.z}));
  next.P = f * state.P * f.transpose() + cfg.Q_gyro;
  next.P = 0.5 * (next.P + next.P.transpose()).eval();
  return next;
}

/// Stacked accelerometer/magnetometer measurement update.
inline MekfState mekf_update(const MekfState& state, const Vec3& y_a,
                             const Vec3& y_m, const MekfConfig& cfg) {
  const RotMat r_bn = quat_to_rotmat(quat_conj(state.q_hat));
  const Eigen::Vector3d v_g =
      detail::to_eigen(r_bn) * Eigen::Vector3d(0, 0, 1);
  const Eigen::Vector3d v_m =
      detail::to_eigen(r_bn) *
      Eigen::Vector3d(std::cos(cfg.dip), 0, -std::sin(cfg.dip));

  Eigen::Matrix<double, 6, 1> resid;
  resid << y_a.x + v_g.x(), y_a.y + v_g.y(), y_a.z + v_g.z(),
      y_m.x - v_m.x(), y_m.y - v_m.y(), y_m.z - v_m.z();

  Eigen::Matrix<double, 6, 3> h;
  h.topRows<3>() = -detail::skew_eigen(v_g);
  h.bottomRows<3>() = detail::skew_eigen(v_m);

  Eigen::Matrix<double, 6, 6> innov = h * state.P * h.transpose();
  innov.topLeftCorner<3, 3>() += cfg.R_acc;
  innov.bottomRightCorner<3, 3>() += cfg.R_mag;

  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(innov);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw SingularInnovation("mekf_update: innovation covariance singular");

  const Eigen::Matrix<double, 3, 6> gain =
      state.P * h.transpose() * innov.inverse();
  const Eigen::Vector3d eta = gain * resid;

  MekfState next;
  next.q_hat = normalize(quat_mul(
      state.q_hat, quat_exp(Vec3{0.5 * eta.x(), 0.5 * eta.y(), 0.5 * eta.z()})));
  next.P = (Eigen::Matrix3d::Identity() - gain * h) * state.P;
  next.P = 0.5 * (next.P + next.P.transpose()).eval();
  return next;
}

}  // namespace orient
