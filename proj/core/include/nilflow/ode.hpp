#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>

namespace nilflow::ode {

struct Options {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 0.0;  ///< 0 selects the step automatically
  std::int64_t max_steps = 1'000'000;
};

enum class Status { ok, step_limit, step_underflow };

struct StepStats {
  std::int64_t accepted = 0;
  std::int64_t rejected = 0;
  double max_error = 0.0;  ///< largest accepted scaled error estimate
};

namespace detail {

// Dormand-Prince 5(4) tableau, FSAL.
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights.
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace detail

/// Adaptive embedded Runge-Kutta 5(4) with PI step-size control.
///
/// Calls sink(t, y) at t0, at every accepted step, and at each checkpoint
/// (steps are clipped so checkpoints are hit exactly). `checkpoints` must be
/// sorted ascending; entries outside (t0, t1] are ignored.
template <class F, class Sink>
Status integrate(F&& f, Eigen::VectorXd y, double t0, double t1, const Options& opt,
                 std::span<const double> checkpoints, Sink&& sink, StepStats* stats = nullptr) {
  using Eigen::VectorXd;
  const auto n = y.size();
  StepStats local;
  StepStats& st = stats ? *stats : local;

  double t = t0;
  sink(t, y);
  if (t1 <= t0 || n == 0) {
    if (t1 > t0) sink(t1, y);
    return Status::ok;
  }

  std::size_t next_cp = 0;
  while (next_cp < checkpoints.size() && checkpoints[next_cp] <= t0) ++next_cp;

  VectorXd k1 = f(t, y), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n);

  auto error_norm = [&](const VectorXd& ynew, const VectorXd& yerr) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = yerr[i] / sc;
      sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(n));
  };

  // Standard starting-step heuristic based on the first derivative.
  double h = opt.initial_step;
  if (h <= 0.0) {
    double d0 = 0.0, d1 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y[i]);
      d0 += (y[i] / sc) * (y[i] / sc);
      d1 += (k1[i] / sc) * (k1[i] / sc);
    }
    d0 = std::sqrt(d0 / static_cast<double>(n));
    d1 = std::sqrt(d1 / static_cast<double>(n));
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, t1 - t0);
    VectorXd y1 = y + h0 * k1;
    VectorXd f1 = f(t + h0, y1);
    double d2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double sc = opt.atol + opt.rtol * std::abs(y[i]);
      const double r = (f1[i] - k1[i]) / sc;
      d2 += r * r;
    }
    d2 = std::sqrt(d2 / static_cast<double>(n)) / h0;
    const double dm = std::max(d1, d2);
    double h1 = (dm <= 1e-15) ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, t1 - t0});
  }

  constexpr double safety = 0.9, fac_min = 0.2, fac_max = 5.0;
  constexpr double pi_alpha = 0.17, pi_beta = 0.04;  // PI exponents for order 5
  double err_old = 1e-4;

  VectorXd ytmp(n), ynew(n), yerr(n);
  std::int64_t steps = 0;

  while (t < t1) {
    if (steps++ >= opt.max_steps) return Status::step_limit;

    const double eps_step = 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1.0);
    if (h < eps_step) return Status::step_underflow;

    // Clip to the next checkpoint / final time so they are hit exactly.
    double t_target = t1;
    if (next_cp < checkpoints.size() && checkpoints[next_cp] < t1) t_target = checkpoints[next_cp];
    const double hs = std::min(h, t_target - t);

    using namespace detail;
    ytmp = y + hs * (a21 * k1);
    k2 = f(t + c2 * hs, ytmp);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    k3 = f(t + c3 * hs, ytmp);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    k4 = f(t + c4 * hs, ytmp);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    k5 = f(t + c5 * hs, ytmp);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    k6 = f(t + hs, ytmp);
    ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    k7 = f(t + hs, ynew);
    yerr = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double err = error_norm(ynew, yerr);
    if (err <= 1.0) {
      ++st.accepted;
      st.max_error = std::max(st.max_error, err);
      t += hs;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      sink(t, y);
      while (next_cp < checkpoints.size() && t >= checkpoints[next_cp]) ++next_cp;
      const double e = std::max(err, 1e-16);
      double fac = safety * std::pow(e, -pi_alpha) * std::pow(err_old, pi_beta);
      fac = std::clamp(fac, fac_min, fac_max);
      h = hs * fac;
      err_old = e;
    } else {
      ++st.rejected;
      const double fac = std::max(fac_min, safety * std::pow(err, -0.2));
      h = hs * std::min(1.0, fac);
    }
  }
  return Status::ok;
}

}  // namespace nilflow::ode

namespace nilflow {

enum class IntegrationStatus { ok, step_limit, step_underflow };

inline IntegrationStatus to_integration_status(ode::Status s) {
  switch (s) {
    case ode::Status::step_limit: return IntegrationStatus::step_limit;
    case ode::Status::step_underflow: return IntegrationStatus::step_underflow;
    default: return IntegrationStatus::ok;
  }
}

}  // namespace nilflow
