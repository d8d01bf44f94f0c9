#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <vector>

#include "nilflow/errors.hpp"
#include "nilflow/rational.hpp"

namespace nilflow {

/// One stored bracket relation [x_j, x_k] += alpha x_l with j < k.
/// The skew-symmetric completion alpha_{kj}^l = -alpha_{jk}^l is implicit.
struct BracketEntry {
  int j = 0;
  int k = 0;
  int l = 0;
  double alpha = 0.0;
  std::optional<Rat> alpha_exact;  ///< present when the input was exact
};

/// Nilpotent Lie algebra presented by sparse structure constants over a
/// distinguished orthogonal basis. Entries are kept in dictionary order on
/// (j, k, l). Immutable after construction.
class BracketSpec {
 public:
  BracketSpec(int dim, std::vector<BracketEntry> entries);

  int dim() const { return dim_; }
  const std::vector<BracketEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  /// True when every structure constant carries an exact rational value.
  bool is_rational() const { return rational_; }

  /// [x_a, x_b] as a coefficient vector, a, b one-based.
  Eigen::VectorXd bracket(int a, int b) const;
  RatVec bracket_exact(int a, int b) const;

 private:
  int dim_;
  std::vector<BracketEntry> entries_;
  bool rational_;
};

/// Diagonal inner product Q = sum q_i dx^i (x) dx^i, all q_i > 0.
struct DiagonalMetric {
  Eigen::VectorXd q;
  std::optional<RatVec> exact;

  static DiagonalMetric ones(int n);
  static DiagonalMetric from_values(Eigen::VectorXd values);
  static DiagonalMetric from_exact(RatVec values);
};

struct JacobiViolation {
  int a = 0, b = 0, c = 0;           ///< offending basis triple, one-based
  Eigen::VectorXd residual;          ///< Jacobi sum expanded in the basis
};

struct JacobiReport {
  bool pass = true;
  bool exact = false;                ///< residuals were computed exactly
  std::vector<JacobiViolation> violations;
};

/// Checks [x_a,[x_b,x_c]] + [x_b,[x_c,x_a]] + [x_c,[x_a,x_b]] = 0 for all
/// a < b < c. Exact when the spec is rational, else tolerance 1e-12 on the
/// residual norm.
JacobiReport validate_jacobi(const BracketSpec& spec);

/// Smallest c with the c-th term of the lower central series zero, counting
/// the algebra itself as term 0. Throws NotNilpotentError if the series
/// stabilizes at a nonzero subspace.
int nilpotency_class(const BracketSpec& spec);

/// Combinatorial root data: triples in dictionary order, the integer root
/// matrix (one row e_j + e_k - e_l per triple) and its Gram matrix.
struct RootSystem {
  std::vector<std::array<int, 3>> triples;
  Eigen::MatrixXi root_matrix;  ///< m x n
  Eigen::MatrixXi gram;         ///< root_matrix * root_matrix^T, m x m
  int dim = 0;

  int m() const { return static_cast<int>(triples.size()); }
};

/// Throws AbelianAlgebraError when the spec has no entries.
RootSystem root_system(const BracketSpec& spec);

/// Same construction but an abelian spec yields m = 0 instead of an error;
/// flows on such systems are constant.
RootSystem root_system_allow_abelian(const BracketSpec& spec);

/// Squares of the orthonormal-basis structure constants,
/// a_i = (q_l / (q_j q_k)) alpha_i^2, in dictionary order.
struct StructureVector {
  Eigen::VectorXd values;
  std::optional<RatVec> exact;

  static StructureVector from_values(Eigen::VectorXd v);
  static StructureVector from_exact(RatVec v);
};

StructureVector structure_vector(const BracketSpec& spec, const DiagonalMetric& metric);

/// Orthonormal-basis structure constants sqrt(q_l/(q_j q_k)) alpha_i,
/// dictionary order; their squares are structure_vector().
std::vector<double> rescaled_constants(const BracketSpec& spec, const DiagonalMetric& metric);

/// Matrix of ad_x, x = sum coeffs_i x_i, in the given basis.
Eigen::MatrixXd ad_matrix(const BracketSpec& spec, const Eigen::VectorXd& coeffs);

}  // namespace nilflow
