#include "nilflow/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace nilflow {

namespace {

constexpr double kFloatTol = 1e-12;

void check_indices(int dim, const BracketEntry& e) {
  if (!(1 <= e.j && e.j < e.k && e.k <= dim && 1 <= e.l && e.l <= dim))
    throw DimensionMismatchError("bracket entry (" + std::to_string(e.j) + "," +
                                 std::to_string(e.k) + "," + std::to_string(e.l) +
                                 ") violates 1 <= j < k <= n, 1 <= l <= n for n = " +
                                 std::to_string(dim));
  const bool zero = e.alpha_exact ? (*e.alpha_exact == Rat(0)) : (e.alpha == 0.0);
  if (zero)
    throw DimensionMismatchError("bracket entry (" + std::to_string(e.j) + "," +
                                 std::to_string(e.k) + "," + std::to_string(e.l) +
                                 ") stores alpha = 0");
}

}  // namespace

BracketSpec::BracketSpec(int dim, std::vector<BracketEntry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (dim_ <= 0) throw DimensionMismatchError("dimension must be positive");
  for (auto& e : entries_) {
    check_indices(dim_, e);
    if (e.alpha_exact) e.alpha = to_double(*e.alpha_exact);
  }
  std::sort(entries_.begin(), entries_.end(), [](const BracketEntry& a, const BracketEntry& b) {
    return std::array{a.j, a.k, a.l} < std::array{b.j, b.k, b.l};
  });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    const auto &a = entries_[i - 1], &b = entries_[i];
    if (a.j == b.j && a.k == b.k && a.l == b.l)
      throw DimensionMismatchError("duplicate bracket entry (" + std::to_string(a.j) + "," +
                                   std::to_string(a.k) + "," + std::to_string(a.l) + ")");
  }
  rational_ = std::all_of(entries_.begin(), entries_.end(),
                          [](const BracketEntry& e) { return e.alpha_exact.has_value(); });
}

Eigen::VectorXd BracketSpec::bracket(int a, int b) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  if (a == b) return out;
  const double sign = a < b ? 1.0 : -1.0;
  const int j = std::min(a, b), k = std::max(a, b);
  for (const auto& e : entries_)
    if (e.j == j && e.k == k) out[e.l - 1] += sign * e.alpha;
  return out;
}

RatVec BracketSpec::bracket_exact(int a, int b) const {
  RatVec out(dim_, Rat(0));
  if (a == b) return out;
  const Rat sign = a < b ? Rat(1) : Rat(-1);
  const int j = std::min(a, b), k = std::max(a, b);
  for (const auto& e : entries_)
    if (e.j == j && e.k == k) out[e.l - 1] += sign * e.alpha_exact.value();
  return out;
}

DiagonalMetric DiagonalMetric::ones(int n) {
  DiagonalMetric m;
  m.q = Eigen::VectorXd::Ones(n);
  m.exact = RatVec(n, Rat(1));
  return m;
}

DiagonalMetric DiagonalMetric::from_values(Eigen::VectorXd values) {
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (!(values[i] > 0.0))
      throw DimensionMismatchError("metric entry q_" + std::to_string(i + 1) +
                                   " is not strictly positive");
  DiagonalMetric m;
  m.q = std::move(values);
  return m;
}

DiagonalMetric DiagonalMetric::from_exact(RatVec values) {
  DiagonalMetric m;
  m.q.resize(static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > Rat(0)))
      throw DimensionMismatchError("metric entry q_" + std::to_string(i + 1) +
                                   " is not strictly positive");
    m.q[static_cast<Eigen::Index>(i)] = to_double(values[i]);
  }
  m.exact = std::move(values);
  return m;
}

JacobiReport validate_jacobi(const BracketSpec& spec) {
  JacobiReport report;
  report.exact = spec.is_rational();
  const int n = spec.dim();

  // [x_a, v] extended linearly over the coefficients of v.
  auto ad_apply = [&](int a, const Eigen::VectorXd& v) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
    for (int i = 1; i <= n; ++i)
      if (v[i - 1] != 0.0) out += v[i - 1] * spec.bracket(a, i);
    return out;
  };
  auto ad_apply_exact = [&](int a, const RatVec& v) {
    RatVec out(n, Rat(0));
    for (int i = 1; i <= n; ++i) {
      if (v[i - 1] == Rat(0)) continue;
      RatVec br = spec.bracket_exact(a, i);
      for (int l = 0; l < n; ++l) out[l] += v[i - 1] * br[l];
    }
    return out;
  };

  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) {
        if (report.exact) {
          RatVec sum = ad_apply_exact(a, spec.bracket_exact(b, c));
          RatVec t2 = ad_apply_exact(b, spec.bracket_exact(c, a));
          RatVec t3 = ad_apply_exact(c, spec.bracket_exact(a, b));
          bool zero = true;
          Eigen::VectorXd res = Eigen::VectorXd::Zero(n);
          for (int i = 0; i < n; ++i) {
            sum[i] += t2[i] + t3[i];
            res[i] = to_double(sum[i]);
            if (sum[i] != Rat(0)) zero = false;
          }
          if (!zero) report.violations.push_back({a, b, c, res});
        } else {
          Eigen::VectorXd res = ad_apply(a, spec.bracket(b, c)) +
                                ad_apply(b, spec.bracket(c, a)) +
                                ad_apply(c, spec.bracket(a, b));
          if (res.lpNorm<Eigen::Infinity>() > kFloatTol)
            report.violations.push_back({a, b, c, res});
        }
      }
  report.pass = report.violations.empty();
  return report;
}

namespace {

// Rank-revealing span over the rationals: rows are vectors, returns a basis.
std::vector<RatVec> span_basis_exact(RatMat vectors) {
  if (vectors.empty()) return {};
  const auto pivots = rref(vectors);
  std::vector<RatVec> basis(vectors.begin(), vectors.begin() + pivots.size());
  return basis;
}

std::vector<Eigen::VectorXd> span_basis_float(const std::vector<Eigen::VectorXd>& vectors, int n) {
  if (vectors.empty()) return {};
  Eigen::MatrixXd m(static_cast<Eigen::Index>(vectors.size()), n);
  for (std::size_t i = 0; i < vectors.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vectors[i];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m.transpose());
  qr.setThreshold(1e-10);
  const int rank = static_cast<int>(qr.rank());
  Eigen::MatrixXd qfull = qr.householderQ();
  std::vector<Eigen::VectorXd> basis;
  for (int i = 0; i < rank; ++i) basis.push_back(qfull.col(i));
  return basis;
}

}  // namespace

int nilpotency_class(const BracketSpec& spec) {
  const int n = spec.dim();
  const int max_iter = n + 1;

  if (spec.is_rational()) {
    // Current term of the lower central series as a rational basis.
    std::vector<RatVec> current;
    for (int i = 0; i < n; ++i) {
      RatVec e(n, Rat(0));
      e[i] = Rat(1);
      current.push_back(std::move(e));
    }
    std::size_t prev_dim = current.size();
    for (int c = 1; c <= max_iter; ++c) {
      RatMat next_gens;
      for (int a = 1; a <= n; ++a)
        for (const auto& v : current) {
          RatVec img(n, Rat(0));
          bool nonzero = false;
          for (int i = 1; i <= n; ++i) {
            if (v[i - 1] == Rat(0)) continue;
            RatVec br = spec.bracket_exact(a, i);
            for (int l = 0; l < n; ++l) {
              img[l] += v[i - 1] * br[l];
              if (img[l] != Rat(0)) nonzero = true;
            }
          }
          if (nonzero) next_gens.push_back(std::move(img));
        }
      current = span_basis_exact(std::move(next_gens));
      if (current.empty()) return c;
      if (current.size() >= prev_dim)
        throw NotNilpotentError("lower central series stabilizes at dimension " +
                                std::to_string(current.size()));
      prev_dim = current.size();
    }
  } else {
    std::vector<Eigen::VectorXd> current;
    for (int i = 0; i < n; ++i) current.push_back(Eigen::VectorXd::Unit(n, i));
    std::size_t prev_dim = current.size();
    for (int c = 1; c <= max_iter; ++c) {
      std::vector<Eigen::VectorXd> next_gens;
      for (int a = 1; a <= n; ++a)
        for (const auto& v : current) {
          Eigen::VectorXd img = Eigen::VectorXd::Zero(n);
          for (int i = 1; i <= n; ++i)
            if (v[i - 1] != 0.0) img += v[i - 1] * spec.bracket(a, i);
          if (img.lpNorm<Eigen::Infinity>() > kFloatTol) next_gens.push_back(std::move(img));
        }
      current = span_basis_float(next_gens, n);
      if (current.empty()) return c;
      if (current.size() >= prev_dim)
        throw NotNilpotentError("lower central series stabilizes at dimension " +
                                std::to_string(current.size()));
      prev_dim = current.size();
    }
  }
  throw NotNilpotentError("lower central series did not terminate within dim steps");
}

RootSystem root_system_allow_abelian(const BracketSpec& spec) {
  RootSystem rs;
  rs.dim = spec.dim();
  const int m = static_cast<int>(spec.entries().size());
  rs.root_matrix = Eigen::MatrixXi::Zero(m, rs.dim);
  for (int i = 0; i < m; ++i) {
    const auto& e = spec.entries()[i];
    rs.triples.push_back({e.j, e.k, e.l});
    rs.root_matrix(i, e.j - 1) += 1;
    rs.root_matrix(i, e.k - 1) += 1;
    rs.root_matrix(i, e.l - 1) -= 1;
  }
  rs.gram = rs.root_matrix * rs.root_matrix.transpose();
  return rs;
}

RootSystem root_system(const BracketSpec& spec) {
  if (spec.empty())
    throw AbelianAlgebraError("abelian algebra has no root system (m = 0)");
  return root_system_allow_abelian(spec);
}

StructureVector StructureVector::from_values(Eigen::VectorXd v) {
  StructureVector s;
  s.values = std::move(v);
  return s;
}

StructureVector StructureVector::from_exact(RatVec v) {
  StructureVector s;
  s.values.resize(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) s.values[static_cast<Eigen::Index>(i)] = to_double(v[i]);
  s.exact = std::move(v);
  return s;
}

StructureVector structure_vector(const BracketSpec& spec, const DiagonalMetric& metric) {
  if (metric.q.size() != spec.dim())
    throw DimensionMismatchError("metric dimension " + std::to_string(metric.q.size()) +
                                 " does not match algebra dimension " +
                                 std::to_string(spec.dim()));
  const auto& entries = spec.entries();
  StructureVector out;
  out.values.resize(static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    out.values[static_cast<Eigen::Index>(i)] =
        metric.q[e.l - 1] / (metric.q[e.j - 1] * metric.q[e.k - 1]) * e.alpha * e.alpha;
  }
  if (spec.is_rational() && metric.exact) {
    RatVec ex(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      const RatVec& q = *metric.exact;
      ex[i] = q[e.l - 1] / (q[e.j - 1] * q[e.k - 1]) * (*e.alpha_exact) * (*e.alpha_exact);
    }
    out.exact = std::move(ex);
  }
  return out;
}

std::vector<double> rescaled_constants(const BracketSpec& spec, const DiagonalMetric& metric) {
  if (metric.q.size() != spec.dim())
    throw DimensionMismatchError("metric dimension does not match algebra dimension");
  std::vector<double> out;
  out.reserve(spec.entries().size());
  for (const auto& e : spec.entries())
    out.push_back(std::sqrt(metric.q[e.l - 1] / (metric.q[e.j - 1] * metric.q[e.k - 1])) * e.alpha);
  return out;
}

Eigen::MatrixXd ad_matrix(const BracketSpec& spec, const Eigen::VectorXd& coeffs) {
  const int n = spec.dim();
  if (coeffs.size() != n) throw DimensionMismatchError("coefficient vector has wrong dimension");
  Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : spec.entries()) {
    // column k gets alpha * c_j at row l, column j gets -alpha * c_k.
    ad(e.l - 1, e.k - 1) += coeffs[e.j - 1] * e.alpha;
    ad(e.l - 1, e.j - 1) -= coeffs[e.k - 1] * e.alpha;
  }
  return ad;
}

}  // namespace nilflow
