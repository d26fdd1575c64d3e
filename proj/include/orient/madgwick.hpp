#pragma once

#include <array>
#include <cmath>
#include <type_traits>

#include "orient/errors.hpp"
#include "orient/fast_filter.hpp"
#include "orient/rotmath.hpp"

// Madgwick-style baseline: gradient descent directly on the 4-dimensional
// quaternion, objective f(q) = [y_a + R(q_bn) g^n ; y_m - R(q_bn) m^n],
// with grad_f = J(q)^T f(q), J the 6x4 Jacobian of f in q. Mirrors the
// predict/correct structure of the 3-dimensional filter: the gyroscope
// propagation is the estimate reported for the sample, the normalized
// gradient step is folded into the state carried forward,
//   q_report <- normalize(q + T/2 S(q) y_omega)
//   q <- normalize(q_report - T beta_m grad_f/|grad_f|).

namespace orient {

template <class S>
struct MadgwickParamsT {
  S sample_time{};
  S beta{};            // beta_m (rad/s)
  S dip{};
  S grad_eps{1e-12};
  S half_T{};
  S m1{1};
  S m3{0};

  static MadgwickParamsT make(S sample_time, S beta, S dip = S(0),
                              S grad_eps = S(1e-12)) {
    using std::cos;
    using std::sin;
    MadgwickParamsT p;
    p.sample_time = sample_time;
    p.beta = beta;
    p.dip = dip;
    p.grad_eps = grad_eps;
    p.half_T = sample_time / S(2);
    p.m1 = cos(dip);
    p.m3 = -sin(dip);
    return p;
  }
};

template <class S>
struct MadgwickStateT {
  QuatT<S> q_hat = QuatT<S>::identity();     // carried state (corrected)
  QuatT<S> q_report = QuatT<S>::identity();  // estimate for the last sample
};

using MadgwickParams = MadgwickParamsT<double>;
using MadgwickState = MadgwickStateT<double>;

/// Quaternion gradient J^T f of the stacked objective (4 components).
template <class S>
inline std::array<S, 4> madgwick_gradient(const QuatT<S>& q,
                                          const Vec3T<S>& y_a,
                                          const Vec3T<S>& y_m,
                                          const MadgwickParamsT<S>& p) {
  Vec3T<S> row1, row3;
  detail::body_reference_rows(q, row1, row3);
  const Vec3T<S>& v_g = row3;
  const Vec3T<S> v_m = p.m1 * row1 + p.m3 * row3;

  const std::array<S, 6> f{y_a.x + v_g.x,  y_a.y + v_g.y,  y_a.z + v_g.z,
                           y_m.x - v_m.x,  y_m.y - v_m.y,  y_m.z - v_m.z};

  const S t0 = S(2) * q.q0, t1 = S(2) * q.qv.x;
  const S t2 = S(2) * q.qv.y, t3 = S(2) * q.qv.z;
  const S p1 = S(2) * t1, p2 = S(2) * t2, p3 = S(2) * t3;

  // d v_g / dq and d row1 / dq
  const std::array<std::array<S, 4>, 3> dvg{{{-t2, t3, -t0, t1},
                                             {t1, t0, t3, t2},
                                             {S(0), -p1, -p2, S(0)}}};
  const std::array<std::array<S, 4>, 3> dr1{{{S(0), S(0), -p2, -p3},
                                             {-t3, t2, t1, -t0},
                                             {t2, t3, t0, t1}}};

  // Stacked Jacobian: rows 0..2 are dvg, rows 3..5 are -(m1 dr1 + m3 dvg).
  std::array<std::array<S, 4>, 6> jac;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j) {
      jac[i][j] = dvg[i][j];
      jac[i + 3][j] = -(p.m1 * dr1[i][j] + p.m3 * dvg[i][j]);
    }

  std::array<S, 4> grad{S(0), S(0), S(0), S(0)};
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 6; ++i) grad[j] = grad[j] + jac[i][j] * f[i];
  return grad;
}

template <class S>
inline MadgwickStateT<S> madgwick_step(const MadgwickStateT<S>& state,
                                       const Vec3T<S>& y_omega,
                                       const Vec3T<S>& y_a,
                                       const Vec3T<S>& y_m,
                                       const MadgwickParamsT<S>& p) {
  if constexpr (std::is_same_v<S, double>) {
    for (double c : {y_omega.x, y_omega.y, y_omega.z, y_a.x, y_a.y, y_a.z,
                     y_m.x, y_m.y, y_m.z})
      if (!std::isfinite(c)) throw NonFiniteInput("madgwick step measurement");
  }
  using std::sqrt;
  const QuatT<S> dq = s_apply(state.q_hat, y_omega);
  const QuatT<S> q_report = normalize(
      QuatT<S>{state.q_hat.q0 + p.half_T * dq.q0,
               state.q_hat.qv + p.half_T * dq.qv});

  // the original algorithm works on unit accelerometer/magnetometer vectors
  const S na = norm(y_a), nm = norm(y_m);
  if (!(na > p.grad_eps) || !(nm > p.grad_eps)) return {q_report, q_report};
  const Vec3T<S> ua = (S(1) / na) * y_a;
  const Vec3T<S> um = (S(1) / nm) * y_m;

  const std::array<S, 4> g = madgwick_gradient(q_report, ua, um, p);
  const S gn =
      sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
  QuatT<S> q_next = q_report;
  if (gn > p.grad_eps) {
    const S s = p.sample_time * p.beta / gn;
    q_next = normalize(QuatT<S>{
        q_report.q0 - s * g[0],
        Vec3T<S>{q_report.qv.x - s * g[1], q_report.qv.y - s * g[2],
                 q_report.qv.z - s * g[3]}});
  }
  return {q_next, q_report};
}

/// Baseline tuning rule: beta_m = sqrt(3/4) sigma_omega. Since a unit step in
/// the quaternion is half a radian of rotation, this matches the 3-dimensional
/// filter's correction magnitude of sqrt(3) sigma_omega T per sample.
inline double madgwick_gain_from_gyro_sigma(double sigma_omega) {
  return std::sqrt(0.75) * sigma_omega;
}

}  // namespace orient
