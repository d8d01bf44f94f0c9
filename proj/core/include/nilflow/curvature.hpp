#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "nilflow/algebra.hpp"

namespace nilflow {

/// Ricci form in the orthonormalized basis plus its diagonal.
struct RicciData {
  Eigen::MatrixXd ricci_form;
  Eigen::VectorXd ricci_vector;
};

/// Brute-force Ricci form: assembles the ad and J operator matrices in the
/// orthonormalized basis and evaluates
///   ric(x, y) = -1/2 <ad_x, ad_y> + 1/4 <J_x, J_y>.
/// Reference implementation against which the root-matrix formula is tested.
RicciData ricci_form_oracle(const BracketSpec& spec, const DiagonalMetric& metric);

/// Ricci vector -1/2 a^T Y for Ricci-diagonal bases.
Eigen::VectorXd ricci_vector(const RootSystem& roots, const StructureVector& a);
RatVec ricci_vector_exact(const RootSystem& roots, const RatVec& a);

/// True iff the largest off-diagonal entry of the oracle Ricci form is below tol.
bool is_ricci_diagonal(const BracketSpec& spec, const DiagonalMetric& metric, double tol = 1e-10);

/// Witness for a basis that is not stably Ricci-diagonal: the first Ricci
/// entry (row, col) with a surviving monomial coefficient. The monomial is
/// recorded as integer exponents of sqrt(q_1), ..., sqrt(q_n).
struct StablyDiagonalWitness {
  int row = 0, col = 0;  ///< one-based basis indices
  std::vector<int> monomial;
  double coefficient = 0.0;
};

struct StablyDiagonalResult {
  bool stable = false;
  std::optional<StablyDiagonalWitness> witness;
};

/// Decides whether every off-diagonal Ricci entry vanishes identically as a
/// function of the metric by grouping the entry into monomials in sqrt(q_i)
/// and requiring every coefficient to cancel. Symbolic and exact for rational
/// structure constants; no sampling.
StablyDiagonalResult is_stably_ricci_diagonal(const BracketSpec& spec);

/// Certificate that U a = -2 beta 1 holds (to the recorded residual).
struct SolitonCertificate {
  double beta = 0.0;
  Eigen::VectorXd a_star;
  double residual = 0.0;             ///< ||U a + 2 beta 1||_inf
  Eigen::VectorXd derivation_diag;   ///< Ric - beta Id, diagonal
};

struct ExactSolitonCertificate {
  Rat beta;
  RatVec a_star;
  RatVec derivation_diag;
};

/// Tests U a = c 1 by least-squares fit of c; accepts when the relative
/// residual ||U a + 2 beta 1||_inf / ||U a||_inf is below tol.
std::optional<SolitonCertificate> soliton_test(const RootSystem& roots,
                                               const StructureVector& a,
                                               double tol = 1e-9);

/// Exact variant: accepts only when U a is exactly constant.
std::optional<ExactSolitonCertificate> soliton_test_exact(const RootSystem& roots,
                                                          const RatVec& a);

struct SolitonSearchResult {
  SolitonCertificate certificate;
  ExactSolitonCertificate exact;
  std::optional<DiagonalMetric> metric;  ///< present when a metric realizes a_star
  double recovery_residual = 0.0;        ///< lsq residual of Y ln q = ln(alpha^2 / a_star)
};

/// Searches for a soliton metric: finds a positive primitive-integer solution
/// of U v = lambda 1 (exact; throws NoPositiveSolutionError if none exists),
/// then recovers ln q from Y ln q = ln(alpha^2 / a_star) by minimum-norm least
/// squares. The metric is reported only when that system is consistent to tol.
SolitonSearchResult find_soliton_metric(const BracketSpec& spec, double tol = 1e-9);

/// True iff diag defines a derivation: d_j + d_k = d_l for every stored triple.
bool verify_derivation(const BracketSpec& spec, const Eigen::VectorXd& diag, double tol = 1e-9);
bool verify_derivation_exact(const BracketSpec& spec, const RatVec& diag);

}  // namespace nilflow
