#pragma once

#include <cmath>
#include <type_traits>

#include "orient/errors.hpp"
#include "orient/rotmath.hpp"

// Orientation filter that integrates gyroscope data and corrects drift with a
// single normalized gradient step on the accelerometer/magnetometer residuals.
// The correction acts on a 3-dimensional rotation-vector deviation, so the
// estimated quantity is an angular velocity. Each iteration first propagates
// the previous state with the gyroscope sample,
//   q_report <- normalize(q + T/2 S(q) y_omega),
// which is the estimate reported for the sample, and then folds the
// accelerometer/magnetometer correction into the state carried forward:
//   q <- normalize(q_report - T/2 S(q_report) beta * grad/|grad|).

namespace orient {

template <class S>
struct FilterConfigT {
  S sample_time{};     // T (s)
  S beta{};            // gain (rad/s)
  S dip{};             // dip angle delta (rad)
  S grad_eps{1e-12};   // gradient-norm guard

  // precomputed: half_T = T/2, reference field m^n = (m1, 0, m3)
  S half_T{};
  S m1{1};
  S m3{0};

  static FilterConfigT make(S sample_time, S beta, S dip = S(0),
                            S grad_eps = S(1e-12)) {
    using std::cos;
    using std::sin;
    FilterConfigT c;
    c.sample_time = sample_time;
    c.beta = beta;
    c.dip = dip;
    c.grad_eps = grad_eps;
    c.half_T = sample_time / S(2);
    c.m1 = cos(dip);
    c.m3 = -sin(dip);
    return c;
  }
};

template <class S>
struct FilterStateT {
  QuatT<S> q_hat = QuatT<S>::identity();     // carried state (corrected)
  QuatT<S> q_report = QuatT<S>::identity();  // estimate for the last sample
};

using FilterConfig = FilterConfigT<double>;
using FilterState = FilterStateT<double>;

/// Tuning rule: beta = sqrt(3) * sigma_omega, matching the standard deviation
/// of the per-sample integration drift of three-axis gyroscope noise.
inline double beta_from_gyro_sigma(double sigma_omega) {
  return std::sqrt(3.0) * sigma_omega;
}

namespace detail {

// Rows 1 and 3 of R(q_nb); row3 is R(q_bn) g^n for g^n = (0,0,1) and
// m1*row1 + m3*row3 is R(q_bn) m^n.
template <class S>
inline void body_reference_rows(const QuatT<S>& q, Vec3T<S>& row1,
                                Vec3T<S>& row3) {
  const S q0 = q.q0, q1 = q.qv.x, q2 = q.qv.y, q3 = q.qv.z;
  const S q1q2 = q1 * q2, q0q3 = q0 * q3, q1q3 = q1 * q3, q0q2 = q0 * q2;
  const S q2q3 = q2 * q3, q0q1 = q0 * q1;
  const S q1s = q1 * q1, q2s = q2 * q2, q3s = q3 * q3;
  row1 = {S(1) - S(2) * (q2s + q3s), S(2) * (q1q2 - q0q3),
          S(2) * (q1q3 + q0q2)};
  row3 = {S(2) * (q1q3 - q0q2), S(2) * (q2q3 + q0q1),
          S(1) - S(2) * (q1s + q2s)};
}

}  // namespace detail

/// Gradient of the accelerometer/magnetometer cost at the linearisation point
/// (previous estimate, zero deviation):
///   grad = -[v_g x](y_a + v_g) + [v_m x](y_m - v_m)
/// with v_g = R(q_bn) g^n and v_m = R(q_bn) m^n.
template <class S>
inline Vec3T<S> gradient_v(const QuatT<S>& q_hat, const Vec3T<S>& y_a,
                           const Vec3T<S>& y_m, const FilterConfigT<S>& cfg) {
  Vec3T<S> row1, row3;
  detail::body_reference_rows(q_hat, row1, row3);
  const Vec3T<S>& v_g = row3;
  const Vec3T<S> v_m = cfg.m1 * row1 + cfg.m3 * row3;
  return cross(v_m, y_m - v_m) - cross(v_g, y_a + v_g);
}

/// One filter iteration. The correction is skipped when |grad| falls below
/// cfg.grad_eps (exact fixed point, avoids dividing by zero).
template <class S>
inline FilterStateT<S> step(const FilterStateT<S>& state,
                            const Vec3T<S>& y_omega, const Vec3T<S>& y_a,
                            const Vec3T<S>& y_m, const FilterConfigT<S>& cfg) {
  if constexpr (std::is_same_v<S, double>) {
    for (double c : {y_omega.x, y_omega.y, y_omega.z, y_a.x, y_a.y, y_a.z,
                     y_m.x, y_m.y, y_m.z})
      if (!std::isfinite(c)) throw NonFiniteInput("filter step measurement");
  }
  const QuatT<S> dq = s_apply(state.q_hat, y_omega);
  const QuatT<S> q_report = normalize(
      QuatT<S>{state.q_hat.q0 + cfg.half_T * dq.q0,
               state.q_hat.qv + cfg.half_T * dq.qv});

  const Vec3T<S> grad = gradient_v(q_report, y_a, y_m, cfg);
  const S gn = norm(grad);
  QuatT<S> q_next = q_report;
  if (gn > cfg.grad_eps) {
    const Vec3T<S> corr = (-cfg.beta / gn) * grad;
    const QuatT<S> dc = s_apply(q_report, corr);
    q_next = normalize(QuatT<S>{q_report.q0 + cfg.half_T * dc.q0,
                                q_report.qv + cfg.half_T * dc.qv});
  }
  return {q_next, q_report};
}

/// TRIAD initial orientation from one accelerometer and one magnetometer
/// sample: vertical from -y_a, heading from the horizontal part of y_m.
inline Quaternion init_from_accmag(const Vec3& y_a, const Vec3& y_m,
                                   const FilterConfig& cfg) {
  const double na = norm(y_a), nm = norm(y_m);
  if (!(na > 0.5) || !(nm > 0.5))
    throw DegenerateGeometry("init_from_accmag: measurement norm below 0.5");
  const Vec3 ub = (1.0 / na) * (-y_a);   // gravity direction in body frame
  const Vec3 mb = (1.0 / nm) * y_m;
  const Vec3 c = cross(ub, mb);
  const double cn = norm(c);
  if (cn < std::sin(M_PI / 180.0))
    throw DegenerateGeometry("init_from_accmag: y_a and y_m near parallel");

  const Vec3 t2b = (1.0 / cn) * c;
  const Vec3 t3b = cross(ub, t2b);

  const Vec3 gn{0, 0, 1};
  const Vec3 mn{std::cos(cfg.dip), 0, -std::sin(cfg.dip)};
  const Vec3 cn2 = cross(gn, mn);
  const Vec3 t2n = (1.0 / norm(cn2)) * cn2;
  const Vec3 t3n = cross(gn, t2n);

  // R_nb = [t1n t2n t3n] [t1b t2b t3b]^T
  RotMat bn, nb;
  bn.m[0] = {ub.x, t2b.x, t3b.x};
  bn.m[1] = {ub.y, t2b.y, t3b.y};
  bn.m[2] = {ub.z, t2b.z, t3b.z};
  RotMat nn;
  nn.m[0] = {gn.x, t2n.x, t3n.x};
  nn.m[1] = {gn.y, t2n.y, t3n.y};
  nn.m[2] = {gn.z, t2n.z, t3n.z};
  nb = nn * bn.transposed();
  return rotmat_to_quat(nb);
}

}  // namespace orient
