#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nilflow {

/// Exact rational scalar. Catalog data and the combinatorial matrices are
/// small integers, so 64-bit numerators/denominators are ample.
using Rat = boost::rational<std::int64_t>;
using RatVec = std::vector<Rat>;
/// Row-major rectangular matrix over Rat.
using RatMat = std::vector<RatVec>;

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rat rat_abs(const Rat& r) { return r < Rat(0) ? -r : r; }

std::string rat_to_string(const Rat& r);

/// Parses "p", "-p" or "p/q". Returns nullopt on malformed input or q == 0.
std::optional<Rat> parse_rational(const std::string& text);

std::vector<double> to_double_vec(const RatVec& v);

/// In-place reduced row echelon form; returns the pivot columns.
std::vector<int> rref(RatMat& m);

/// Basis of the right null space { x : m x = 0 }, where m has `cols` columns.
std::vector<RatVec> nullspace(const RatMat& m, int cols);

/// One solution of m x = rhs, or nullopt if the system is inconsistent.
std::optional<RatVec> solve_linear(const RatMat& m, const RatVec& rhs);

/// Scales v so entries are coprime integers and the first nonzero is positive.
RatVec primitive_integer(const RatVec& v);

/// One linear constraint  coeffs . t + constant  (> 0 when strict, >= 0 otherwise).
struct LinearInequality {
  RatVec coeffs;
  Rat constant;
  bool strict = true;
};

/// Fourier-Motzkin elimination over the rationals. Returns a point satisfying
/// every inequality, or nullopt if the system is infeasible. Intended for the
/// small systems arising from kernel positivity and simplex-face feasibility.
std::optional<RatVec> feasible_point(const std::vector<LinearInequality>& system, int nvars);

}  // namespace nilflow
