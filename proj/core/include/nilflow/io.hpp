#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nilflow/algebra.hpp"
#include "nilflow/curvature.hpp"
#include "nilflow/flow.hpp"
#include "nilflow/projective.hpp"

namespace nilflow::io {

/// %.17g formatting; round-trips doubles exactly.
std::string format17(double x);

// Algebra file: {"dim": n, "brackets": [{"j":1,"k":2,"l":3,"alpha":1}, ...]}.
// Rational alphas may be written "p/q" (kept exact); integers are exact too.
BracketSpec parse_algebra(const std::string& json_text);
BracketSpec load_algebra(const std::string& path);
std::string algebra_to_json(const BracketSpec& spec);

// Metric file: {"q": [...]}; entries may be numbers or "p/q" strings.
DiagonalMetric parse_metric(const std::string& json_text, int expected_dim);
DiagonalMetric load_metric(const std::string& path, int expected_dim);
std::string metric_to_json(const DiagonalMetric& metric);

// Gram file: {"U": [[...], ...]}, integer entries.
Eigen::MatrixXi parse_gram(const std::string& json_text);
Eigen::MatrixXi load_gram(const std::string& path);
std::string gram_to_json(const Eigen::MatrixXi& gram);

std::string certificate_to_json(const SolitonCertificate& cert,
                                const ExactSolitonCertificate* exact = nullptr);
std::string collapse_report_to_json(const CollapseReport& report);
std::string equilibria_to_json(const EquilibriumSet& set);
std::string jacobi_report_to_json(const JacobiReport& report);

/// Header "t,q_1..q_n,a_1..a_m,inv_1..inv_k"; one row per sample; invariant
/// columns hold the conserved monomial values.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const RootSystem& roots,
                          const std::vector<Eigen::VectorXi>& invariant_dirs);

/// Header "tau,s_1..s_{m-1},eta_1..eta_{m-1}".
void write_projective_csv(std::ostream& out, const ProjectiveTrajectory& traj,
                          const ProjectiveSystem& sys);

std::string read_file(const std::string& path);   ///< throws ParseError
void write_file(const std::string& path, const std::string& content);

}  // namespace nilflow::io
