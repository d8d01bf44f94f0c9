#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <vector>

#include "nilflow/algebra.hpp"
#include "nilflow/ode.hpp"

namespace nilflow {

/// Affine-chart data for the projectivized bracket flow: the difference
/// matrix P, the normal vectors n_i = (row i of U) - (row m of U), and the
/// induced affine functions eta_i(s) = n_i . (s, 1).
struct ProjectiveSystem {
  Eigen::MatrixXi gram;     ///< m x m
  Eigen::MatrixXi p;        ///< (m-1) x m, identity block with -1 last column
  Eigen::MatrixXi normals;  ///< rows n_i, (m-1) x m
  bool from_algebra = false;  ///< U came from a validated BracketSpec

  int m() const { return static_cast<int>(gram.rows()); }
};

/// Throws DimensionMismatchError when U is not square of size >= 2.
ProjectiveSystem build_projective_system(const Eigen::MatrixXi& gram, bool from_algebra = false);

Eigen::VectorXd eta(const ProjectiveSystem& sys, const Eigen::VectorXd& s);
RatVec eta_exact(const ProjectiveSystem& sys, const RatVec& s);

/// Affine coordinates s_i = a_i / a_m; empty for m = 1.
Eigen::VectorXd s_from_a(const Eigen::VectorXd& a);

/// s plus the chamber sign vector of eta (zero band tol).
struct SimplexState {
  Eigen::VectorXd s;
  std::vector<int> chamber;
};

SimplexState simplex_state(const ProjectiveSystem& sys, const Eigen::VectorXd& s,
                           double tol = 1e-9);
SimplexState s_from_a(const ProjectiveSystem& sys, const StructureVector& a, double tol = 1e-9);

/// Vector field of the projectivized flow: -a_m s_i eta_i(s) in true time, or
/// the time-changed field -s_i eta_i(s) when a_m is absent (same orbits).
Eigen::VectorXd projective_rhs(const ProjectiveSystem& sys, const Eigen::VectorXd& s,
                               std::optional<double> a_m = std::nullopt);

/// Componentwise sign of eta with zero band tol.
std::vector<int> chamber_sign(const ProjectiveSystem& sys, const Eigen::VectorXd& s,
                              double tol = 1e-9);

struct ProjectiveSample {
  double tau = 0.0;
  Eigen::VectorXd s;
};

struct ProjectiveTrajectory {
  std::vector<ProjectiveSample> samples;
  ode::StepStats step_stats;
  IntegrationStatus status = IntegrationStatus::ok;
  SimplexState final_state;
  bool converged = false;  ///< ||s(T) - s(T-1)||_inf < 1e-9
};

struct ProjectiveConfig {
  double rtol = 1e-9;
  double atol = 1e-12;
  std::int64_t max_steps = 1'000'000;
  std::vector<double> sample_times;
};

/// Integrates the time-changed system (ln s_i)' = -eta_i(s). Coordinates that
/// start exactly at zero stay frozen (boundary faces are invariant); positive
/// coordinates stay positive structurally.
ProjectiveTrajectory integrate_projective(const ProjectiveSystem& sys, const Eigen::VectorXd& s0,
                                          double t_end, const ProjectiveConfig& cfg = {});

enum class EquilibriumClass { interior_soliton, boundary, repelling };

/// One equilibrium: a point (or an affine family basepoint + directions) with
/// its zero set M, exact eta values, classification, and heuristic Jacobian
/// eigenvalues of the time-changed field.
struct EquilibriumPoint {
  RatVec s;
  std::vector<int> zero_set;          ///< one-based coordinates forced to zero
  std::vector<RatVec> directions;     ///< nonempty for affine families
  RatVec eta_values;
  EquilibriumClass classification = EquilibriumClass::boundary;
  std::vector<std::complex<double>> jacobian_eigenvalues;  ///< stability hint only
};

struct EquilibriumSet {
  std::vector<EquilibriumPoint> points;
};

/// Enumerates equilibria over all subsets M of {1..m-1}: s_i = 0 on M,
/// eta_i = 0 off M, kept when the solution set meets { s >= 0 }. Affine
/// solution families are returned as basepoint + direction basis. Throws
/// SubsetBudgetError when m - 1 > max_m.
EquilibriumSet equilibria(const ProjectiveSystem& sys, int max_m = 20);

/// Rational basis of ker PU = { v : U v = lambda 1 for some lambda }.
std::vector<RatVec> pu_kernel(const ProjectiveSystem& sys);

/// Nearest enumerated equilibrium to s (euclidean; families measured through
/// the projection onto their affine span). Returns index into set.points.
struct EquilibriumMatch {
  int index = -1;
  double distance = 0.0;
};
std::optional<EquilibriumMatch> match_equilibrium(const EquilibriumSet& set,
                                                  const Eigen::VectorXd& s);

}  // namespace nilflow
