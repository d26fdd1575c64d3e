#pragma once

#include <array>
#include <cmath>
#include <type_traits>

#include "orient/errors.hpp"

// Quaternion / rotation-vector primitives shared by the filters and the
// simulator. Conventions, fixed library-wide:
//   - quaternions are scalar-first (q0, q1, q2, q3), Hamilton product;
//   - q_nb rotates body to navigation, the reverse rotation is conj(q_nb);
//   - exp_q(y) = (cos|y|, y/|y| sin|y|), so a rotation by angle a about unit
//     axis v is exp_q(v a/2) and exp_q(y) equals exp_R(2y) as a rotation;
//   - Euler angles are ZYX (yaw-pitch-roll) aerospace order.
//
// Everything is templated on the scalar type so the instrumented op-counting
// scalar can flow through the same code paths as double.

namespace orient {

namespace detail {

template <class S>
inline void check_finite(const S&, const char*) {}

inline void check_finite(const double& x, const char* what) {
  if (!std::isfinite(x)) throw NonFiniteInput(what);
}

}  // namespace detail

template <class S>
struct Vec3T {
  S x{}, y{}, z{};

  friend Vec3T operator+(const Vec3T& a, const Vec3T& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3T operator-(const Vec3T& a, const Vec3T& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3T operator*(const S& s, const Vec3T& a) {
    return {s * a.x, s * a.y, s * a.z};
  }
  Vec3T operator-() const { return {-x, -y, -z}; }
};

template <class S>
inline S dot(const Vec3T<S>& a, const Vec3T<S>& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <class S>
inline Vec3T<S> cross(const Vec3T<S>& a, const Vec3T<S>& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z,
          a.x * b.y - a.y * b.x};
}

template <class S>
inline S norm(const Vec3T<S>& a) {
  using std::sqrt;
  return sqrt(dot(a, a));
}

template <class S>
struct QuatT {
  S q0{1};       // scalar part
  Vec3T<S> qv;   // vector part

  static QuatT identity() { return {S(1), {S(0), S(0), S(0)}}; }
};

template <class S>
struct Mat3T {
  // row-major
  std::array<std::array<S, 3>, 3> m{};

  static Mat3T identity() {
    Mat3T r;
    r.m[0][0] = S(1);
    r.m[1][1] = S(1);
    r.m[2][2] = S(1);
    return r;
  }

  Vec3T<S> row(int i) const { return {m[i][0], m[i][1], m[i][2]}; }

  friend Vec3T<S> operator*(const Mat3T& a, const Vec3T<S>& v) {
    return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
            a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
            a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
  }

  friend Mat3T operator*(const Mat3T& a, const Mat3T& b) {
    Mat3T r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.m[i][j] =
            a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
    return r;
  }

  Mat3T transposed() const {
    Mat3T r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
    return r;
  }
};

using Vec3 = Vec3T<double>;
using Quaternion = QuatT<double>;
using RotMat = Mat3T<double>;

template <class S>
inline QuatT<S> quat_conj(const QuatT<S>& q) {
  return {q.q0, -q.qv};
}

template <class S>
inline S quat_norm(const QuatT<S>& q) {
  using std::sqrt;
  return sqrt(q.q0 * q.q0 + dot(q.qv, q.qv));
}

/// Hamilton product a (.) b.
template <class S>
inline QuatT<S> quat_mul(const QuatT<S>& a, const QuatT<S>& b) {
  QuatT<S> r;
  r.q0 = a.q0 * b.q0 - dot(a.qv, b.qv);
  r.qv = a.q0 * b.qv + b.q0 * a.qv + cross(a.qv, b.qv);
  return r;
}

template <class S>
inline QuatT<S> normalize(const QuatT<S>& q) {
  const S n = quat_norm(q);
  const S inv = S(1) / n;
  return {q.q0 * inv, inv * q.qv};
}

/// Quaternion exponential: (cos a, v sin a) with a = |y|, v = y/a.
/// Small |y| takes a series branch so v = y/a never divides by zero.
template <class S>
inline QuatT<S> quat_exp(const Vec3T<S>& y) {
  using std::cos;
  using std::sin;
  const S alpha = norm(y);
  if (alpha < S(1e-10)) {
    // cos a ~ 1 - a^2/2, sin a / a ~ 1 - a^2/6
    const S a2 = alpha * alpha;
    QuatT<S> q{S(1) - a2 / S(2), (S(1) - a2 / S(6)) * y};
    return normalize(q);
  }
  const S s = sin(alpha) / alpha;
  return {cos(alpha), s * y};
}

/// Skew-symmetric cross-product matrix [v x].
template <class S>
inline Mat3T<S> skew(const Vec3T<S>& v) {
  Mat3T<S> r;
  r.m[0][1] = -v.z;
  r.m[0][2] = v.y;
  r.m[1][0] = v.z;
  r.m[1][2] = -v.x;
  r.m[2][0] = -v.y;
  r.m[2][1] = v.x;
  return r;
}

/// 4x3 matrix S(q) with top row -qv' and lower block q0 I - [qv x];
/// (1/2) S(q) w is the quaternion rate for body angular velocity w.
template <class S>
struct SMat {
  std::array<std::array<S, 3>, 4> m{};
};

template <class S>
inline SMat<S> s_matrix(const QuatT<S>& q) {
  SMat<S> s;
  s.m[0] = {-q.qv.x, -q.qv.y, -q.qv.z};
  const Mat3T<S> lower = [&] {
    Mat3T<S> l;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) l.m[i][j] = skew(q.qv).m[i][j];
    l.m[0][0] = l.m[0][0] + q.q0;
    l.m[1][1] = l.m[1][1] + q.q0;
    l.m[2][2] = l.m[2][2] + q.q0;
    return l;
  }();
  for (int i = 0; i < 3; ++i)
    s.m[i + 1] = {lower.m[i][0], lower.m[i][1], lower.m[i][2]};
  return s;
}

/// S(q) w evaluated directly (same result as s_matrix(q) * w).
template <class S>
inline QuatT<S> s_apply(const QuatT<S>& q, const Vec3T<S>& w) {
  QuatT<S> r;
  r.q0 = -dot(q.qv, w);
  r.qv = q.q0 * w + cross(q.qv, w);
  return r;
}

/// Rotation matrix of a unit quaternion (body-to-navigation for q_nb).
template <class S>
inline Mat3T<S> quat_to_rotmat(const QuatT<S>& q) {
  if constexpr (std::is_same_v<S, double>) {
    const double n2 = q.q0 * q.q0 + dot(q.qv, q.qv);
    if (!(std::fabs(n2 - 1.0) < 2e-6))
      throw NonUnitQuaternion("quat_to_rotmat requires a unit quaternion");
  }
  const S q0 = q.q0, q1 = q.qv.x, q2 = q.qv.y, q3 = q.qv.z;
  Mat3T<S> r;
  r.m[0][0] = S(1) - S(2) * (q2 * q2 + q3 * q3);
  r.m[0][1] = S(2) * (q1 * q2 - q0 * q3);
  r.m[0][2] = S(2) * (q1 * q3 + q0 * q2);
  r.m[1][0] = S(2) * (q1 * q2 + q0 * q3);
  r.m[1][1] = S(1) - S(2) * (q1 * q1 + q3 * q3);
  r.m[1][2] = S(2) * (q2 * q3 - q0 * q1);
  r.m[2][0] = S(2) * (q1 * q3 - q0 * q2);
  r.m[2][1] = S(2) * (q2 * q3 + q0 * q1);
  r.m[2][2] = S(1) - S(2) * (q1 * q1 + q2 * q2);
  return r;
}

/// Rodrigues formula exp_R(eta) = I + sin a [v x] + (1 - cos a) [v x]^2.
template <class S>
inline Mat3T<S> exp_rotmat(const Vec3T<S>& eta) {
  using std::cos;
  using std::sin;
  const S alpha = norm(eta);
  const Mat3T<S> k = skew(eta);
  Mat3T<S> r = Mat3T<S>::identity();
  if (alpha < S(1e-10)) {
    // I + [eta x] + [eta x]^2 / 2
    const Mat3T<S> k2 = k * k;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r.m[i][j] = r.m[i][j] + k.m[i][j] + k2.m[i][j] / S(2);
    return r;
  }
  const S a = sin(alpha) / alpha;
  const S b = (S(1) - cos(alpha)) / (alpha * alpha);
  const Mat3T<S> k2 = k * k;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = r.m[i][j] + a * k.m[i][j] + b * k2.m[i][j];
  return r;
}

/// Shepperd's method; used for TRIAD initialization.
inline Quaternion rotmat_to_quat(const RotMat& r) {
  const double tr = r.m[0][0] + r.m[1][1] + r.m[2][2];
  Quaternion q;
  if (tr > 0.0) {
    double s = std::sqrt(tr + 1.0) * 2.0;
    q.q0 = 0.25 * s;
    q.qv = {(r.m[2][1] - r.m[1][2]) / s, (r.m[0][2] - r.m[2][0]) / s,
            (r.m[1][0] - r.m[0][1]) / s};
  } else if (r.m[0][0] > r.m[1][1] && r.m[0][0] > r.m[2][2]) {
    double s = std::sqrt(1.0 + r.m[0][0] - r.m[1][1] - r.m[2][2]) * 2.0;
    q.q0 = (r.m[2][1] - r.m[1][2]) / s;
    q.qv = {0.25 * s, (r.m[0][1] + r.m[1][0]) / s, (r.m[0][2] + r.m[2][0]) / s};
  } else if (r.m[1][1] > r.m[2][2]) {
    double s = std::sqrt(1.0 + r.m[1][1] - r.m[0][0] - r.m[2][2]) * 2.0;
    q.q0 = (r.m[0][2] - r.m[2][0]) / s;
    q.qv = {(r.m[0][1] + r.m[1][0]) / s, 0.25 * s, (r.m[1][2] + r.m[2][1]) / s};
  } else {
    double s = std::sqrt(1.0 + r.m[2][2] - r.m[0][0] - r.m[1][1]) * 2.0;
    q.q0 = (r.m[1][0] - r.m[0][1]) / s;
    q.qv = {(r.m[0][2] + r.m[2][0]) / s, (r.m[1][2] + r.m[2][1]) / s, 0.25 * s};
  }
  return normalize(q);
}

struct EulerAngles {
  double roll, pitch, yaw;  // radians, ZYX order
};

/// ZYX (yaw-pitch-roll) Euler angles of a unit quaternion, pitch in
/// [-pi/2, pi/2]. At gimbal lock (|pitch| = pi/2) roll is fixed to 0.
inline EulerAngles quat_to_euler(const Quaternion& q) {
  detail::check_finite(q.q0, "quat_to_euler");
  const RotMat r = quat_to_rotmat(q);
  const double sp = -r.m[2][0];
  EulerAngles e{};
  if (sp >= 1.0 - 1e-12) {
    e.pitch = 1.5707963267948966;
    e.roll = 0.0;
    e.yaw = std::atan2(-r.m[0][1], r.m[1][1]);
  } else if (sp <= -1.0 + 1e-12) {
    e.pitch = -1.5707963267948966;
    e.roll = 0.0;
    e.yaw = std::atan2(-r.m[0][1], r.m[1][1]);
  } else {
    e.pitch = std::asin(sp);
    e.roll = std::atan2(r.m[2][1], r.m[2][2]);
    e.yaw = std::atan2(r.m[1][0], r.m[0][0]);
  }
  return e;
}

inline Quaternion euler_to_quat(const EulerAngles& e) {
  const Quaternion qz = quat_exp(Vec3{0, 0, e.yaw / 2});
  const Quaternion qy = quat_exp(Vec3{0, e.pitch / 2, 0});
  const Quaternion qx = quat_exp(Vec3{e.roll / 2, 0, 0});
  return quat_mul(quat_mul(qz, qy), qx);
}

/// Rotation angle between two unit quaternions in [0, pi]; invariant under
/// the q -> -q double cover.
inline double rotation_angle(const Quaternion& a, const Quaternion& b) {
  detail::check_finite(a.q0 + b.q0, "rotation_angle");
  const Quaternion d = quat_mul(quat_conj(a), b);
  // atan2 form keeps full precision for tiny angles, where acos degrades
  // to ~sqrt(machine eps)
  return 2.0 * std::atan2(norm(d.qv), std::fabs(d.q0));
}

/// Sandwich rotation q (.) (0, v) (.) conj(q).
inline Vec3 rotate(const Quaternion& q, const Vec3& v) {
  const Quaternion p{0.0, v};
  return quat_mul(quat_mul(q, p), quat_conj(q)).qv;
}

}  // namespace orient
