#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "nilflow/algebra.hpp"
#include "nilflow/curvature.hpp"
#include "nilflow/ode.hpp"

namespace nilflow {

/// Joint state of the metric flow and the bracket flow at one time.
struct FlowState {
  double t = 0.0;
  DiagonalMetric q;
  StructureVector a;
};

/// Builds the t = 0 state for a spec/metric pair (a from the metric).
FlowState initial_state(const BracketSpec& spec, const DiagonalMetric& metric);

struct IntegratorConfig {
  double rtol = 1e-9;
  double atol = 1e-12;
  double t_end = 1.0;
  std::int64_t max_steps = 1'000'000;
  double initial_step = 0.0;             ///< 0 = automatic
  std::vector<double> sample_times;      ///< extra exact-time samples, ascending
};

/// Time-ordered samples plus integration metadata. On step_limit or
/// step_underflow the samples end at the last valid state.
struct Trajectory {
  std::vector<FlowState> samples;
  ode::StepStats step_stats;
  IntegrationStatus status = IntegrationStatus::ok;
  std::vector<double> invariant_drift;   ///< per conserved direction, if monitored
};

/// da/dt = -a o (U a)  (componentwise product).
Eigen::VectorXd bracket_flow_rhs(const RootSystem& roots, const Eigen::VectorXd& a);

/// d ln q / dt = a^T Y = -2 Ric.
Eigen::VectorXd ricci_flow_rhs(const RootSystem& roots, const Eigen::VectorXd& a);

/// Integrates the coupled system in (ln q, ln a), which keeps all samples
/// structurally positive. Samples are emitted at every accepted step and at
/// each requested sample time. m = 0 yields a constant trajectory.
Trajectory integrate(const RootSystem& roots, const FlowState& state0, const IntegratorConfig& cfg);

/// Integrates several initial states, results in input order. threads <= 0
/// picks hardware concurrency.
std::vector<Trajectory> integrate_batch(const RootSystem& roots,
                                        const std::vector<FlowState>& states,
                                        const IntegratorConfig& cfg, int threads = 0);

/// Closed-form soliton evolution:
///   a(t) = a(0) (-2 beta t + 1)^{-1},   q_j(t) = q_j(0) (-2 beta t + 1)^{r_j / beta}.
/// The certificate is rescaled to the ray of state0.a; throws NotSolitonError
/// when state0.a is not proportional to the certified structure vector (or the
/// certificate residual exceeds tol).
FlowState soliton_trajectory(const SolitonCertificate& cert, const FlowState& state0, double t,
                             double tol = 1e-9);

/// Integer basis of { d : Y d = 0 }; each d gives a conserved monomial
/// q_1^{d_1} ... q_n^{d_n}. Empty when the root matrix has full column rank.
std::vector<Eigen::VectorXi> conserved_monomials(const RootSystem& roots);

/// Max drift of sum_i d_i ln q_i per direction, relative to max(1, |initial|).
std::vector<double> monitor_invariants(const Trajectory& traj,
                                       const std::vector<Eigen::VectorXi>& dirs);

/// Collapse data for a soliton trajectory: growth exponents r_j / beta, the
/// index set of the minimal Ricci eigenvalue, and the sup-normalized limit
/// metric (1 on the minimal eigenspace, 0 elsewhere).
struct CollapseReport {
  Eigen::VectorXd normalized_limit;
  std::vector<int> e_min_indices;        ///< one-based
  Eigen::VectorXd exponents;
  std::optional<RatVec> exponents_exact;
};

CollapseReport collapse_analysis(const RootSystem& roots, const SolitonCertificate& cert,
                                 const Eigen::VectorXd& ric);
CollapseReport collapse_analysis_exact(const RootSystem& roots,
                                       const ExactSolitonCertificate& cert);

/// Empirical collapse diagnostics for non-soliton runs: sup-normalized final
/// metric and log-log slopes of q_j(t) fitted over the last decade of time.
struct EmpiricalCollapse {
  Eigen::VectorXd normalized_final;
  Eigen::VectorXd fitted_exponents;
};

EmpiricalCollapse empirical_collapse(const Trajectory& traj);

/// Sup-normalized representative q / max(q) of the homothety class.
DiagonalMetric volume_normalize(const DiagonalMetric& metric);

}  // namespace nilflow
