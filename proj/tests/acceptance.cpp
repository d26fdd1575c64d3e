// Acceptance suite: runs every headline result at its stated tolerance and
// prints one pass/fail line per criterion. Exit code is the failure count.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "orient/evaluation.hpp"
#include "orient/fast_filter.hpp"
#include "orient/madgwick.hpp"
#include "orient/rng.hpp"
#include "test_util.hpp"

using namespace orient;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt_rmse(const std::array<double, 3>& r) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(%.3f, %.3f, %.3f) deg", r[0], r[1], r[2]);
  return buf;
}

bool within(const std::array<double, 3>& got,
            const std::array<double, 3>& want, double tol) {
  for (int i = 0; i < 3; ++i)
    if (std::fabs(got[i] - want[i]) > tol) return false;
  return true;
}

Vec3 body_gravity(const Quaternion& q_nb) {
  return quat_to_rotmat(quat_conj(q_nb)) * Vec3{0, 0, 1};
}

Vec3 body_field(const Quaternion& q_nb, double dip) {
  return quat_to_rotmat(quat_conj(q_nb)) *
         Vec3{std::cos(dip), 0, -std::sin(dip)};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const int runs = 100;
  SimConfig gaussian;  // defaults: 8000 samples, 10 Hz, sigmas per scenario
  gaussian.seed = 42;

  SimConfig outliers = gaussian;
  outliers.outlier_prob = 0.05;

  // --- criteria 1-3: Gaussian-noise RMSE table rows ---
  const McSummary g_fast = run_monte_carlo(FilterId::Fast, gaussian, runs);
  const McSummary g_madg = run_monte_carlo(FilterId::Madgwick, gaussian, runs);
  const McSummary g_mekf = run_monte_carlo(FilterId::Mekf, gaussian, runs);

  report(1, within(g_fast.rmse_deg, {0.71, 0.66, 0.71}, 0.15),
         "gaussian fast rmse " + fmt_rmse(g_fast.rmse_deg) +
             " vs (0.710, 0.660, 0.710) +/- 0.15");
  report(2, within(g_madg.rmse_deg, {0.72, 0.65, 0.71}, 0.15),
         "gaussian madgwick rmse " + fmt_rmse(g_madg.rmse_deg) +
             " vs (0.720, 0.650, 0.710) +/- 0.15");
  {
    bool ok = within(g_mekf.rmse_deg, {0.66, 0.60, 0.66}, 0.15);
    for (int i = 0; i < 3; ++i)
      ok = ok && g_mekf.rmse_deg[i] <= g_fast.rmse_deg[i] + 0.05;
    report(3, ok,
           "gaussian mekf rmse " + fmt_rmse(g_mekf.rmse_deg) +
               " vs (0.660, 0.600, 0.660) +/- 0.15, and <= fast + 0.05");
  }

  // --- criterion 4: outlier robustness ---
  {
    const McSummary o_fast = run_monte_carlo(FilterId::Fast, outliers, runs);
    const McSummary o_madg =
        run_monte_carlo(FilterId::Madgwick, outliers, runs);
    const McSummary o_mekf = run_monte_carlo(FilterId::Mekf, outliers, runs);
    bool ok = within(o_fast.rmse_deg, {0.77, 0.72, 0.77}, 0.2) &&
              within(o_madg.rmse_deg, {0.78, 0.72, 0.78}, 0.2);
    for (int i = 0; i < 3; ++i) {
      ok = ok && o_mekf.rmse_deg[i] >= 4.0 && o_mekf.rmse_deg[i] <= 15.0;
      ok = ok && o_mekf.rmse_deg[i] >= 4.0 * o_fast.rmse_deg[i];
    }
    report(4, ok,
           "outliers: fast " + fmt_rmse(o_fast.rmse_deg) + ", madgwick " +
               fmt_rmse(o_madg.rmse_deg) + ", mekf " +
               fmt_rmse(o_mekf.rmse_deg) + " (mekf in [4,15] and >= 4x fast)");
  }

  // --- criterion 5: op-count bands and ratio ---
  {
    const auto fast_ops = count_ops(FilterId::Fast);
    const auto madg_ops = count_ops(FilterId::Madgwick);
    const bool ok = fast_ops && madg_ops &&
                    *fast_ops >= 105 && *fast_ops <= 175 &&
                    *madg_ops >= 164 && *madg_ops <= 272 &&
                    static_cast<double>(*fast_ops) / *madg_ops <= 0.72;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "ops/iter fast %llu (140 +/- 25%%), madgwick %llu "
                  "(218 +/- 25%%), ratio %.3f <= 0.72",
                  static_cast<unsigned long long>(fast_ops.value_or(0)),
                  static_cast<unsigned long long>(madg_ops.value_or(0)),
                  fast_ops && madg_ops
                      ? static_cast<double>(*fast_ops) / *madg_ops
                      : 0.0);
    report(5, ok, buf);
  }

  // --- criterion 6: timing ordering ---
  {
    const double t_fast = time_per_iteration(FilterId::Fast, 100000);
    const double t_madg = time_per_iteration(FilterId::Madgwick, 100000);
    const double t_mekf = time_per_iteration(FilterId::Mekf, 100000);
    const bool ok = t_fast < t_madg && t_fast < t_mekf / 3.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "time/iter fast %.3f us < madgwick %.3f us, and < mekf "
                  "%.3f us / 3",
                  t_fast * 1e6, t_madg * 1e6, t_mekf * 1e6);
    report(6, ok, buf);
  }

  // --- criterion 7: convergence ranking from a 90-degree initial error ---
  {
    SimConfig conv = gaussian;
    const double a = (M_PI / 2) / std::sqrt(3.0);
    conv.init_error = {a, a, a};
    const int horizon = 150;
    const McSummary c_fast =
        convergence_curves(FilterId::Fast, conv, runs, horizon);
    const McSummary c_madg =
        convergence_curves(FilterId::Madgwick, conv, runs, horizon);
    const McSummary c_mekf =
        convergence_curves(FilterId::Mekf, conv, runs, horizon);
    const int k = horizon - 1;
    const bool ok = c_mekf.curve_mean[k] <= c_fast.curve_mean[k] &&
                    c_fast.curve_mean[k] <= c_madg.curve_mean[k];
    char buf[192];
    std::snprintf(buf, sizeof(buf),
                  "error at sample 150: mekf %.3f [%.3f, %.3f] <= fast %.3f "
                  "[%.3f, %.3f] <= madgwick %.3f [%.3f, %.3f] deg",
                  c_mekf.curve_mean[k], c_mekf.curve_lo[k], c_mekf.curve_hi[k],
                  c_fast.curve_mean[k], c_fast.curve_lo[k], c_fast.curve_hi[k],
                  c_madg.curve_mean[k], c_madg.curve_lo[k],
                  c_madg.curve_hi[k]);
    report(7, ok, buf);
  }

  // --- criterion 8: gradient vs central finite differences ---
  {
    auto rng = make_rng(421);
    bool ok = true;
    const double eps = 1e-6;
    for (int i = 0; i < 100 && ok; ++i) {
      const double dip = 0.5 * (i % 5) / 4.0;
      const FilterConfig cfg = FilterConfig::make(0.1, 0.1, dip);
      const Quaternion q = test::random_unit_quat(rng);
      const Vec3 y_a = -body_gravity(q) + test::random_vec3(rng, 0.05);
      const Vec3 y_m = body_field(q, dip) + test::random_vec3(rng, 0.05);
      const Vec3 analytic = gradient_v(q, y_a, y_m, cfg);
      Vec3 fd;
      double* out[3] = {&fd.x, &fd.y, &fd.z};
      for (int j = 0; j < 3; ++j) {
        Vec3 e{0, 0, 0};
        (j == 0 ? e.x : j == 1 ? e.y : e.z) = eps;
        *out[j] = (test::cost_v(e, q, y_a, y_m, dip) -
                   test::cost_v(-e, q, y_a, y_m, dip)) /
                  (2 * eps);
      }
      ok = norm(analytic - fd) <= 1e-6 * norm(fd);
    }
    report(8, ok,
           "gradient matches central finite differences within 1e-6 relative "
           "over 100 random configurations");
  }

  // --- criterion 9: kinematics oracles ---
  {
    auto rng = make_rng(422);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool exp_ok = true;
    for (int i = 0; i < 1000 && exp_ok; ++i) {
      Vec3 y = test::random_vec3(rng);
      const double n = norm(y);
      if (n > 0) y = (u(rng) * M_PI / n) * y;
      exp_ok = test::frobenius_diff(quat_to_rotmat(quat_exp(y)),
                                    exp_rotmat(2.0 * y)) < 1e-9;
    }
    bool s_ok = true;
    const double eps = 1e-6;
    for (int i = 0; i < 100 && s_ok; ++i) {
      const Quaternion q = test::random_unit_quat(rng);
      const Vec3 y = test::random_vec3(rng);
      const Quaternion plus = quat_mul(q, quat_exp((eps / 2) * y));
      const Quaternion minus = quat_mul(q, quat_exp((-eps / 2) * y));
      const Quaternion analytic = s_apply(q, y);
      const double scale = 0.5 * quat_norm(analytic);
      const double d0 = (plus.q0 - minus.q0) / (2 * eps) - 0.5 * analytic.q0;
      const double dx =
          (plus.qv.x - minus.qv.x) / (2 * eps) - 0.5 * analytic.qv.x;
      const double dy =
          (plus.qv.y - minus.qv.y) / (2 * eps) - 0.5 * analytic.qv.y;
      const double dz =
          (plus.qv.z - minus.qv.z) / (2 * eps) - 0.5 * analytic.qv.z;
      s_ok = std::sqrt(d0 * d0 + dx * dx + dy * dy + dz * dz) <=
             1e-6 * scale;
    }
    report(9, exp_ok && s_ok,
           "exp_q/exp_R agree within 1e-9 Frobenius (1000 vectors); S(q) "
           "Jacobian matches finite differences within 1e-6");
  }

  // --- criterion 10: byte-identical summary.json for a fixed seed ---
  {
    const char* cli = std::getenv("ORIENT_CLI");
    bool ok = false;
    std::string detail = "ORIENT_CLI not set";
    if (cli) {
      const fs::path dir_a = fs::temp_directory_path() / "orient_acc_a";
      const fs::path dir_b = fs::temp_directory_path() / "orient_acc_b";
      fs::remove_all(dir_a);
      fs::remove_all(dir_b);
      const std::string common =
          std::string(cli) +
          " --scenario outliers --filter all --runs 5 --seed 1337"
          " --count-ops --output-dir ";
      const int rc_a =
          std::system((common + dir_a.string() + " > /dev/null").c_str());
      const int rc_b =
          std::system((common + dir_b.string() + " > /dev/null").c_str());
      ok = rc_a == 0 && rc_b == 0 &&
           read_file(dir_a / "summary.json") ==
               read_file(dir_b / "summary.json") &&
           !read_file(dir_a / "summary.json").empty();
      detail = ok ? "two invocations with the same seed: summary.json "
                    "byte-identical"
                  : "summary.json differs or CLI failed";
    }
    report(10, ok, detail);
  }

  // --- criterion 11: zero-noise sanity ---
  {
    SimConfig quiet = gaussian;
    quiet.sigma_omega = quiet.sigma_acc = quiet.sigma_mag = 0.0;
    const GroundTruth truth = generate_trajectory(quiet);
    const MeasurementLog log = synthesize_measurements(truth, quiet);
    const auto est = run_filter(FilterId::Fast, log, truth.q[0], quiet);
    const double err_deg =
        rotation_angle(truth.q.back(), est.back()) * 180.0 / M_PI;
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "zero-noise final rotation-angle error %.4f deg < 1 deg",
                  err_deg);
    report(11, err_deg < 1.0, buf);
  }

  std::printf("%d criterion failure(s)\n", failures);
  return failures;
}
