#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "orient/rotmath.hpp"
#include "test_util.hpp"

using namespace orient;
using orient::test::frobenius_diff;
using orient::test::random_unit_quat;
using orient::test::random_vec3;

namespace {
const double kPi = M_PI;
const double kSqrtHalf = std::sqrt(0.5);
}  // namespace

TEST_CASE("quat_mul: identity element") {
  auto rng = make_rng(1);
  const Quaternion q = random_unit_quat(rng);
  const Quaternion r = quat_mul(Quaternion::identity(), q);
  CHECK(r.q0 == doctest::Approx(q.q0).epsilon(1e-15));
  CHECK(r.qv.x == doctest::Approx(q.qv.x).epsilon(1e-15));
}

TEST_CASE("quat_mul: q times conj gives norm squared") {
  auto rng = make_rng(2);
  Quaternion q = random_unit_quat(rng);
  q.q0 *= 1.7;  // non-unit on purpose
  q.qv = 1.7 * q.qv;
  const Quaternion r = quat_mul(q, quat_conj(q));
  const double n2 = 1.7 * 1.7;
  CHECK(r.q0 == doctest::Approx(n2).epsilon(1e-12));
  CHECK(std::fabs(r.qv.x) < 1e-12);
  CHECK(std::fabs(r.qv.y) < 1e-12);
  CHECK(std::fabs(r.qv.z) < 1e-12);
}

TEST_CASE("quat_mul: two 90-degree x rotations compose to 180 degrees") {
  const Quaternion qx90{kSqrtHalf, {kSqrtHalf, 0, 0}};
  const Quaternion r = quat_mul(qx90, qx90);
  CHECK(r.q0 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r.qv.x == doctest::Approx(1.0).epsilon(1e-12));
  // rotation-matrix oracle
  const RotMat rr = quat_to_rotmat(r);
  RotMat expect = quat_to_rotmat(qx90) * quat_to_rotmat(qx90);
  CHECK(frobenius_diff(rr, expect) < 1e-12);
}

TEST_CASE("quat_mul preserves norms") {
  auto rng = make_rng(3);
  for (int i = 0; i < 50; ++i) {
    GaussianSampler g(rng);
    const Quaternion a{g(), {g(), g(), g()}};
    const Quaternion b{g(), {g(), g(), g()}};
    CHECK(quat_norm(quat_mul(a, b)) ==
          doctest::Approx(quat_norm(a) * quat_norm(b)).epsilon(1e-12));
  }
}

TEST_CASE("quat_exp: zero and axis cases") {
  const Quaternion q0 = quat_exp(Vec3{0, 0, 0});
  CHECK(q0.q0 == doctest::Approx(1.0));
  CHECK(norm(q0.qv) == doctest::Approx(0.0));

  const Quaternion qx = quat_exp(Vec3{kPi / 2, 0, 0});
  CHECK(qx.q0 == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(qx.qv.x == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quat_exp tiny arguments stay unit norm") {
  for (double s : {0.0, 1e-13, 1e-11, 1e-9}) {
    const Quaternion q = quat_exp(Vec3{s, -s, s / 2});
    CHECK(std::fabs(quat_norm(q) - 1.0) < 1e-12);
  }
}

TEST_CASE("quat_exp matches Rodrigues with factor-2 convention") {
  const Vec3 y{0.1, 0.2, 0.3};
  CHECK(frobenius_diff(quat_to_rotmat(quat_exp(y)), exp_rotmat(2.0 * y)) <
        1e-12);
}

// quat_exp(y) and exp_R(2y) represent the same rotation for |y| <= pi
TEST_CASE("property: exp map agreement over 1000 random rotation vectors") {
  auto rng = make_rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Vec3 y = random_vec3(rng);
    const double n = norm(y);
    if (n > 0) y = (u(rng) * kPi / n) * y;  // |y| uniform up to pi
    CHECK(frobenius_diff(quat_to_rotmat(quat_exp(y)), exp_rotmat(2.0 * y)) <
          1e-9);
  }
}

TEST_CASE("s_matrix: identity and e1 cases") {
  const SMat<double> s0 = s_matrix(Quaternion::identity());
  CHECK(s0.m[0][0] == 0.0);
  CHECK(s0.m[1][0] == 1.0);
  CHECK(s0.m[2][1] == 1.0);
  CHECK(s0.m[3][2] == 1.0);
  CHECK(s0.m[1][1] == 0.0);

  const Quaternion qe1{0, {1, 0, 0}};
  const SMat<double> s1 = s_matrix(qe1);
  CHECK(s1.m[0][0] == -1.0);
  CHECK(s1.m[0][1] == 0.0);
  // lower block [e1 x]
  CHECK(s1.m[1][0] == 0.0);
  CHECK(s1.m[2][2] == -1.0);
  CHECK(s1.m[3][1] == 1.0);
}

TEST_CASE("s_apply equals s_matrix product") {
  auto rng = make_rng(5);
  const Quaternion q = random_unit_quat(rng);
  const Vec3 y = random_vec3(rng);
  const SMat<double> s = s_matrix(q);
  const Quaternion direct = s_apply(q, y);
  const double expect0 = s.m[0][0] * y.x + s.m[0][1] * y.y + s.m[0][2] * y.z;
  CHECK(direct.q0 == doctest::Approx(expect0).epsilon(1e-14));
  for (int i = 0; i < 3; ++i) {
    const double e = s.m[i + 1][0] * y.x + s.m[i + 1][1] * y.y +
                     s.m[i + 1][2] * y.z;
    const double d = i == 0 ? direct.qv.x : (i == 1 ? direct.qv.y : direct.qv.z);
    CHECK(d == doctest::Approx(e).epsilon(1e-14));
  }
}

// (1/2) S(q) y is the derivative of q (.) exp_q(t y / 2) at t = 0
TEST_CASE("property: S(q) finite-difference Jacobian match") {
  auto rng = make_rng(6);
  const double eps = 1e-6;
  for (int i = 0; i < 100; ++i) {
    const Quaternion q = random_unit_quat(rng);
    const Vec3 y = random_vec3(rng);
    const Quaternion plus = quat_mul(q, quat_exp((eps / 2) * y));
    const Quaternion minus = quat_mul(q, quat_exp((-eps / 2) * y));
    const Quaternion analytic = s_apply(q, y);
    const double fd0 = (plus.q0 - minus.q0) / (2 * eps);
    CHECK(fd0 == doctest::Approx(0.5 * analytic.q0).epsilon(1e-6));
    const double fdx = (plus.qv.x - minus.qv.x) / (2 * eps);
    CHECK(fdx == doctest::Approx(0.5 * analytic.qv.x).epsilon(1e-6));
    const double fdy = (plus.qv.y - minus.qv.y) / (2 * eps);
    CHECK(fdy == doctest::Approx(0.5 * analytic.qv.y).epsilon(1e-6));
    const double fdz = (plus.qv.z - minus.qv.z) / (2 * eps);
    CHECK(fdz == doctest::Approx(0.5 * analytic.qv.z).epsilon(1e-6));
  }
}

TEST_CASE("quat_to_rotmat: identity and 90-degree x") {
  CHECK(frobenius_diff(quat_to_rotmat(Quaternion::identity()),
                       RotMat::identity()) < 1e-15);
  const Quaternion qx90{kSqrtHalf, {kSqrtHalf, 0, 0}};
  RotMat expect;
  expect.m = {{{1, 0, 0}, {0, 0, -1}, {0, 1, 0}}};
  CHECK(frobenius_diff(quat_to_rotmat(qx90), expect) < 1e-12);
}

TEST_CASE("quat_to_rotmat: orthonormal, det 1, conjugate transposes") {
  auto rng = make_rng(7);
  for (int i = 0; i < 50; ++i) {
    const Quaternion q = random_unit_quat(rng);
    const RotMat r = quat_to_rotmat(q);
    CHECK(frobenius_diff(r.transposed() * r, RotMat::identity()) < 1e-9);
    const double det =
        r.m[0][0] * (r.m[1][1] * r.m[2][2] - r.m[1][2] * r.m[2][1]) -
        r.m[0][1] * (r.m[1][0] * r.m[2][2] - r.m[1][2] * r.m[2][0]) +
        r.m[0][2] * (r.m[1][0] * r.m[2][1] - r.m[1][1] * r.m[2][0]);
    CHECK(det == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(frobenius_diff(quat_to_rotmat(quat_conj(q)), r.transposed()) <
          1e-12);
  }
}

TEST_CASE("quat_to_rotmat: sandwich oracle") {
  auto rng = make_rng(8);
  for (int i = 0; i < 50; ++i) {
    const Quaternion q = random_unit_quat(rng);
    const Vec3 v = random_vec3(rng);
    const Vec3 rv = quat_to_rotmat(q) * v;
    const Vec3 sv = rotate(q, v);
    CHECK(norm(rv - sv) < 1e-12);
  }
}

TEST_CASE("quat_to_rotmat rejects non-unit input") {
  CHECK_THROWS_AS(quat_to_rotmat(Quaternion{2.0, {0, 0, 0}}),
                  NonUnitQuaternion);
  const double nan = std::nan("");
  CHECK_THROWS_AS(quat_to_rotmat(Quaternion{nan, {0, 0, 0}}),
                  NonUnitQuaternion);
}

TEST_CASE("exp_rotmat: zero and 180-degree x") {
  CHECK(frobenius_diff(exp_rotmat(Vec3{0, 0, 0}), RotMat::identity()) <
        1e-15);
  RotMat expect;
  expect.m = {{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}};
  CHECK(frobenius_diff(exp_rotmat(Vec3{kPi, 0, 0}), expect) < 1e-12);
}

TEST_CASE("exp_rotmat: first-order Taylor remainder bound") {
  auto rng = make_rng(9);
  for (double scale : {1e-2, 1e-3, 1e-4}) {
    Vec3 eta = random_vec3(rng);
    eta = (scale / norm(eta)) * eta;
    RotMat lin = RotMat::identity();
    const RotMat k = skew(eta);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) lin.m[i][j] += k.m[i][j];
    CHECK(frobenius_diff(exp_rotmat(eta), lin) <= dot(eta, eta));
  }
}

TEST_CASE("quat_to_euler: trivial cases") {
  const EulerAngles e0 = quat_to_euler(Quaternion::identity());
  CHECK(e0.roll == doctest::Approx(0.0));
  CHECK(e0.pitch == doctest::Approx(0.0));
  CHECK(e0.yaw == doctest::Approx(0.0));

  const Quaternion qz90 = quat_exp(Vec3{0, 0, kPi / 4});
  const EulerAngles ez = quat_to_euler(qz90);
  CHECK(ez.yaw == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(std::fabs(ez.roll) < 1e-12);
  CHECK(std::fabs(ez.pitch) < 1e-12);
}

TEST_CASE("property: euler round trip away from gimbal lock") {
  auto rng = make_rng(10);
  int checked = 0;
  while (checked < 100) {
    const Quaternion q = random_unit_quat(rng);
    const EulerAngles e = quat_to_euler(q);
    if (std::fabs(std::fabs(e.pitch) - kPi / 2) < 1e-3) continue;
    const Quaternion back = euler_to_quat(e);
    CHECK(rotation_angle(q, back) < 1e-9);
    ++checked;
  }
}

TEST_CASE("quat_to_euler: gimbal lock convention fixes roll to zero") {
  const Quaternion q = quat_exp(Vec3{0, kPi / 4, 0});  // pitch +90 deg
  const EulerAngles e = quat_to_euler(q);
  CHECK(e.pitch == doctest::Approx(kPi / 2).epsilon(1e-9));
  CHECK(e.roll == 0.0);
}

TEST_CASE("rotation_angle: trivial cases and double cover") {
  auto rng = make_rng(11);
  const Quaternion q = random_unit_quat(rng);
  CHECK(rotation_angle(q, q) == doctest::Approx(0.0));
  const Quaternion neg{-q.q0, -q.qv};
  CHECK(rotation_angle(q, neg) == doctest::Approx(0.0));
  const Quaternion qx90{kSqrtHalf, {kSqrtHalf, 0, 0}};
  CHECK(rotation_angle(Quaternion::identity(), qx90) ==
        doctest::Approx(kPi / 2).epsilon(1e-12));
  // symmetric
  const Quaternion p = random_unit_quat(rng);
  CHECK(rotation_angle(q, p) == doctest::Approx(rotation_angle(p, q)));
}
