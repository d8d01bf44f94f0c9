#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilflow/algebra.hpp"

namespace nilflow {
namespace catalog {

/// Origin of an expected value: an established value for this algebra, or one
/// derived here by independent computation.
enum class Provenance { reference, derived };

struct Expected {
  std::optional<Rat> beta;
  std::optional<RatVec> structure_vector;      ///< soliton structure vector
  std::optional<RatVec> ricci_vector;          ///< at that structure vector
  std::optional<Eigen::MatrixXi> gram;
  std::optional<RatVec> derivation_diag;       ///< Ric - beta Id
  std::vector<Eigen::VectorXi> kernel_vectors; ///< conserved monomial directions
  std::optional<RatVec> closed_form_exponents; ///< r_j / beta
  std::map<std::string, Provenance> provenance;
};

/// A worked example: validated bracket spec (or a raw Gram matrix for
/// gram-only entries) plus expected values for golden tests.
struct Entry {
  std::string name;
  std::string description;
  std::optional<BracketSpec> spec;
  std::optional<DiagonalMetric> soliton_metric;
  std::optional<Eigen::MatrixXi> gram_only;
  Expected expected;

  bool is_gram_only() const { return !spec.has_value(); }
};

/// Known names: h3, l4, h5, p5, heisenberg(r) with r >= 1, r6, l4b_gram.
/// Throws UnknownEntryError otherwise.
Entry get(const std::string& name);

/// (name, one-line description) pairs for all entries.
std::vector<std::pair<std::string, std::string>> list();

}  // namespace catalog
}  // namespace nilflow
