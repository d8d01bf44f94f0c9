#include "nilflow/flow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace nilflow {

FlowState initial_state(const BracketSpec& spec, const DiagonalMetric& metric) {
  return FlowState{0.0, metric, structure_vector(spec, metric)};
}

Eigen::VectorXd bracket_flow_rhs(const RootSystem& roots, const Eigen::VectorXd& a) {
  if (a.size() != roots.m()) throw DimensionMismatchError("structure vector length mismatch");
  const Eigen::VectorXd ua = roots.gram.cast<double>() * a;
  return -a.cwiseProduct(ua);
}

Eigen::VectorXd ricci_flow_rhs(const RootSystem& roots, const Eigen::VectorXd& a) {
  if (a.size() != roots.m()) throw DimensionMismatchError("structure vector length mismatch");
  return roots.root_matrix.cast<double>().transpose() * a;
}

Trajectory integrate(const RootSystem& roots, const FlowState& state0,
                     const IntegratorConfig& cfg) {
  const int n = roots.dim;
  const int m = roots.m();
  if (state0.q.q.size() != n || state0.a.values.size() != m)
    throw DimensionMismatchError("initial state does not match the root system");

  Trajectory traj;
  if (m == 0) {
    // Abelian: the right-hand side vanishes identically.
    traj.samples.push_back(state0);
    FlowState end = state0;
    end.t = state0.t + cfg.t_end;
    traj.samples.push_back(end);
    return traj;
  }

  // State y = (ln q, ln a); positivity is structural in these variables.
  Eigen::VectorXd y0(n + m);
  y0.head(n) = state0.q.q.array().log();
  y0.tail(m) = state0.a.values.array().log();

  const Eigen::MatrixXd yt = roots.root_matrix.cast<double>().transpose();
  const Eigen::MatrixXd gram = roots.gram.cast<double>();
  auto rhs = [&](double, const Eigen::VectorXd& y) {
    const Eigen::VectorXd a = y.tail(m).array().exp();
    Eigen::VectorXd dy(n + m);
    dy.head(n) = yt * a;
    dy.tail(m) = -(gram * a);
    return dy;
  };

  auto sink = [&](double t, const Eigen::VectorXd& y) {
    FlowState s;
    s.t = state0.t + t;
    s.q.q = y.head(n).array().exp();
    s.a.values = y.tail(m).array().exp();
    if (!traj.samples.empty() && traj.samples.back().t == s.t) return;
    traj.samples.push_back(std::move(s));
  };

  ode::Options opt{cfg.rtol, cfg.atol, cfg.initial_step, cfg.max_steps};
  std::vector<double> cps = cfg.sample_times;
  std::sort(cps.begin(), cps.end());
  const auto status =
      ode::integrate(rhs, y0, 0.0, cfg.t_end, opt, cps, sink, &traj.step_stats);
  traj.status = to_integration_status(status);
  traj.invariant_drift = monitor_invariants(traj, conserved_monomials(roots));
  return traj;
}

std::vector<Trajectory> integrate_batch(const RootSystem& roots,
                                        const std::vector<FlowState>& states,
                                        const IntegratorConfig& cfg, int threads) {
  std::vector<Trajectory> out(states.size());
  if (states.empty()) return out;
  unsigned nt = threads > 0 ? static_cast<unsigned>(threads)
                            : std::max(1u, std::thread::hardware_concurrency());
  nt = std::min<unsigned>(nt, states.size());
  if (nt <= 1) {
    for (std::size_t i = 0; i < states.size(); ++i) out[i] = integrate(roots, states[i], cfg);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < nt; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < states.size(); i = next.fetch_add(1))
        out[i] = integrate(roots, states[i], cfg);
    });
  for (auto& th : pool) th.join();
  return out;
}

FlowState soliton_trajectory(const SolitonCertificate& cert, const FlowState& state0, double t,
                             double tol) {
  const auto m = cert.a_star.size();
  if (state0.a.values.size() != m)
    throw DimensionMismatchError("state and certificate have different lengths");
  const double scale = cert.a_star.cwiseAbs().maxCoeff();
  if (cert.residual >= tol * std::max(scale, 1.0))
    throw NotSolitonError("certificate residual exceeds tolerance");

  // The certificate fixes a ray; rescale it to state0's structure vector.
  const double lambda = state0.a.values[0] / cert.a_star[0];
  for (Eigen::Index i = 0; i < m; ++i) {
    const double li = state0.a.values[i] / cert.a_star[i];
    if (std::abs(li - lambda) > tol * std::max(1.0, std::abs(lambda)))
      throw NotSolitonError("initial structure vector is not on the certified soliton ray");
  }
  const double beta = lambda * cert.beta;
  const double factor = -2.0 * beta * t + 1.0;

  FlowState out;
  out.t = state0.t + t;
  out.a.values = state0.a.values / factor;
  const Eigen::VectorXd ric =
      lambda * (cert.derivation_diag.array() + cert.beta).matrix();  // scales with a
  out.q.q.resize(state0.q.q.size());
  for (Eigen::Index j = 0; j < state0.q.q.size(); ++j)
    out.q.q[j] = state0.q.q[j] * std::pow(factor, ric[j] / beta);
  return out;
}

std::vector<Eigen::VectorXi> conserved_monomials(const RootSystem& roots) {
  const int n = roots.dim;
  RatMat y(roots.m(), RatVec(n, Rat(0)));
  for (int i = 0; i < roots.m(); ++i)
    for (int j = 0; j < n; ++j) y[i][j] = Rat(roots.root_matrix(i, j));
  std::vector<Eigen::VectorXi> out;
  for (const auto& v : nullspace(y, n)) {
    const RatVec prim = primitive_integer(v);
    Eigen::VectorXi d(n);
    for (int j = 0; j < n; ++j) d[j] = static_cast<int>(prim[j].numerator());
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<double> monitor_invariants(const Trajectory& traj,
                                       const std::vector<Eigen::VectorXi>& dirs) {
  std::vector<double> drift(dirs.size(), 0.0);
  if (traj.samples.empty()) return drift;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    const Eigen::VectorXd d = dirs[k].cast<double>();
    const double v0 = d.dot(traj.samples.front().q.q.array().log().matrix());
    const double norm = std::max(1.0, std::abs(v0));
    for (const auto& s : traj.samples) {
      const double v = d.dot(s.q.q.array().log().matrix());
      drift[k] = std::max(drift[k], std::abs(v - v0) / norm);
    }
  }
  return drift;
}

namespace {

CollapseReport collapse_from(const Eigen::VectorXd& ric, double beta,
                             std::optional<RatVec> exact_exponents) {
  CollapseReport report;
  const Eigen::Index n = ric.size();
  report.exponents = ric / beta;
  report.exponents_exact = std::move(exact_exponents);
  const double rmin = ric.minCoeff();
  report.normalized_limit = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::abs(ric[j] - rmin) <= 1e-12 * std::max(1.0, std::abs(rmin))) {
      report.e_min_indices.push_back(static_cast<int>(j) + 1);
      report.normalized_limit[j] = 1.0;
    }
  return report;
}

}  // namespace

CollapseReport collapse_analysis(const RootSystem& roots, const SolitonCertificate& cert,
                                 const Eigen::VectorXd& ric) {
  if (roots.m() == 0) throw AbelianAlgebraError("collapse analysis requires m >= 1");
  if (ric.size() != roots.dim) throw DimensionMismatchError("ricci vector has wrong dimension");
  return collapse_from(ric, cert.beta, std::nullopt);
}

CollapseReport collapse_analysis_exact(const RootSystem& roots,
                                       const ExactSolitonCertificate& cert) {
  if (roots.m() == 0) throw AbelianAlgebraError("collapse analysis requires m >= 1");
  const RatVec ric = ricci_vector_exact(roots, cert.a_star);
  RatVec expo(ric.size());
  Eigen::VectorXd ricd(static_cast<Eigen::Index>(ric.size()));
  for (std::size_t j = 0; j < ric.size(); ++j) {
    expo[j] = ric[j] / cert.beta;
    ricd[static_cast<Eigen::Index>(j)] = to_double(ric[j]);
  }
  return collapse_from(ricd, to_double(cert.beta), std::move(expo));
}

EmpiricalCollapse empirical_collapse(const Trajectory& traj) {
  EmpiricalCollapse out;
  if (traj.samples.empty()) return out;
  const auto& last = traj.samples.back();
  out.normalized_final = last.q.q / last.q.q.maxCoeff();

  // Log-log slope of q_j over the last decade of time.
  const double t_end = last.t;
  const double t_lo = t_end / 10.0;
  const Eigen::Index n = last.q.q.size();
  out.fitted_exponents = Eigen::VectorXd::Zero(n);
  std::vector<const FlowState*> window;
  for (const auto& s : traj.samples)
    if (s.t >= t_lo && s.t > 0.0) window.push_back(&s);
  if (window.size() < 2) return out;
  Eigen::VectorXd lt(static_cast<Eigen::Index>(window.size()));
  for (std::size_t i = 0; i < window.size(); ++i) lt[static_cast<Eigen::Index>(i)] = std::log(window[i]->t);
  const double tbar = lt.mean();
  const double sxx = (lt.array() - tbar).square().sum();
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd lq(static_cast<Eigen::Index>(window.size()));
    for (std::size_t i = 0; i < window.size(); ++i)
      lq[static_cast<Eigen::Index>(i)] = std::log(window[i]->q.q[j]);
    out.fitted_exponents[j] = (lt.array() - tbar).matrix().dot(lq) / sxx;
  }
  return out;
}

DiagonalMetric volume_normalize(const DiagonalMetric& metric) {
  DiagonalMetric out;
  out.q = metric.q / metric.q.maxCoeff();
  if (metric.exact) {
    const RatVec& q = *metric.exact;
    Rat mx = q[0];
    for (const Rat& r : q) mx = std::max(mx, r);
    RatVec ex(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) ex[i] = q[i] / mx;
    out.exact = std::move(ex);
  }
  return out;
}

}  // namespace nilflow
