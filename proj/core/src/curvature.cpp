#include "nilflow/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace nilflow {

namespace {

// Skew-symmetric completion of the orthonormal-basis structure constants:
// (j, k) -> alpha_bar, both orientations, j != k.
struct CompletedEntry {
  int j, k, l;
  double value;
};

std::vector<CompletedEntry> completed_rescaled(const BracketSpec& spec,
                                               const DiagonalMetric& metric) {
  std::vector<CompletedEntry> out;
  out.reserve(2 * spec.entries().size());
  const auto bars = rescaled_constants(spec, metric);
  for (std::size_t i = 0; i < spec.entries().size(); ++i) {
    const auto& e = spec.entries()[i];
    out.push_back({e.j, e.k, e.l, bars[i]});
    out.push_back({e.k, e.j, e.l, -bars[i]});
  }
  return out;
}

}  // namespace

RicciData ricci_form_oracle(const BracketSpec& spec, const DiagonalMetric& metric) {
  const int n = spec.dim();
  if (metric.q.size() != n) throw DimensionMismatchError("metric dimension mismatch");
  const auto table = completed_rescaled(spec, metric);

  // ad_r in the orthonormalized basis: (ad_r)_{l,k} = abar_{rk}^l.
  // J_r encodes the metric adjoint:    (J_r)_{l,k} = abar_{kl}^r.
  std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
  std::vector<Eigen::MatrixXd> jop(n, Eigen::MatrixXd::Zero(n, n));
  for (const auto& e : table) {
    ad[e.j - 1](e.l - 1, e.k - 1) += e.value;
    jop[e.l - 1](e.k - 1, e.j - 1) += e.value;
  }

  RicciData out;
  out.ricci_form.resize(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) {
      const double v = -0.5 * (ad[r].cwiseProduct(ad[s])).sum() +
                       0.25 * (jop[r].cwiseProduct(jop[s])).sum();
      out.ricci_form(r, s) = v;
      out.ricci_form(s, r) = v;
    }
  out.ricci_vector = out.ricci_form.diagonal();
  return out;
}

Eigen::VectorXd ricci_vector(const RootSystem& roots, const StructureVector& a) {
  if (a.values.size() != roots.m()) throw DimensionMismatchError("structure vector length mismatch");
  return -0.5 * (roots.root_matrix.cast<double>().transpose() * a.values);
}

RatVec ricci_vector_exact(const RootSystem& roots, const RatVec& a) {
  if (static_cast<int>(a.size()) != roots.m())
    throw DimensionMismatchError("structure vector length mismatch");
  RatVec out(roots.dim, Rat(0));
  for (int i = 0; i < roots.m(); ++i)
    for (int j = 0; j < roots.dim; ++j)
      out[j] += Rat(-roots.root_matrix(i, j), 2) * a[i];
  return out;
}

bool is_ricci_diagonal(const BracketSpec& spec, const DiagonalMetric& metric, double tol) {
  const auto data = ricci_form_oracle(spec, metric);
  const int n = spec.dim();
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s)
      if (std::abs(data.ricci_form(r, s)) >= tol) return false;
  return true;
}

StablyDiagonalResult is_stably_ricci_diagonal(const BracketSpec& spec) {
  const int n = spec.dim();
  // Work with the raw constants; the metric dependence is carried by the
  // monomial exponents in sqrt(q_i). Coefficients are accumulated exactly
  // when the constants are rational (4 x the squared constant stays integral
  // in the numerator), with a scaled tolerance otherwise.
  const bool exact = spec.is_rational();
  struct Ent {
    int j, k, l;
    double v;
    Rat vx;
  };
  std::vector<Ent> table;
  for (const auto& e : spec.entries()) {
    const Rat vx = e.alpha_exact ? *e.alpha_exact : Rat(0);
    table.push_back({e.j, e.k, e.l, e.alpha, vx});
    table.push_back({e.k, e.j, e.l, -e.alpha, -vx});
  }

  double scale = 0.0;
  for (const auto& e : table) scale = std::max(scale, e.v * e.v);
  const double tol = 1e-12 * std::max(scale, 1.0);

  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s) {
      std::map<std::vector<int>, double> coeff;
      std::map<std::vector<int>, Rat> coeff_exact;
      // Weighted pair contribution under the monomial key.
      auto add = [&](std::vector<int> mono, const Ent& e1, const Ent& e2, int num, int den) {
        coeff[mono] += (static_cast<double>(num) / den) * e1.v * e2.v;
        if (exact) coeff_exact[std::move(mono)] += Rat(num, den) * e1.vx * e2.vx;
      };
      // -1/2 <ad_r, ad_s>: pairs abar_{r k}^l abar_{s k}^l.
      for (const auto& e1 : table) {
        if (e1.j != r) continue;
        for (const auto& e2 : table) {
          if (e2.j != s || e2.k != e1.k || e2.l != e1.l) continue;
          std::vector<int> mono(n, 0);
          mono[e1.l - 1] += 2;
          mono[e1.k - 1] -= 2;
          mono[r - 1] -= 1;
          mono[s - 1] -= 1;
          add(std::move(mono), e1, e2, -1, 2);
        }
      }
      // +1/4 <J_r, J_s>: pairs abar_{k l}^r abar_{k l}^s.
      for (const auto& e1 : table) {
        if (e1.l != r) continue;
        for (const auto& e2 : table) {
          if (e2.l != s || e2.j != e1.j || e2.k != e1.k) continue;
          std::vector<int> mono(n, 0);
          mono[r - 1] += 1;
          mono[s - 1] += 1;
          mono[e1.j - 1] -= 2;
          mono[e1.k - 1] -= 2;
          add(std::move(mono), e1, e2, 1, 4);
        }
      }
      for (const auto& [mono, c] : coeff) {
        const bool nonzero = exact ? coeff_exact[mono] != Rat(0) : std::abs(c) > tol;
        if (nonzero) {
          StablyDiagonalResult res;
          res.stable = false;
          res.witness = StablyDiagonalWitness{r, s, mono, c};
          return res;
        }
      }
    }
  return {true, std::nullopt};
}

std::optional<SolitonCertificate> soliton_test(const RootSystem& roots, const StructureVector& a,
                                               double tol) {
  const int m = roots.m();
  if (a.values.size() != m) throw DimensionMismatchError("structure vector length mismatch");
  if (m == 0) return std::nullopt;
  const Eigen::MatrixXd gram = roots.gram.cast<double>();
  const Eigen::VectorXd w = gram * a.values;
  const double c = w.mean();
  if (!(c > 0.0)) return std::nullopt;  // soliton constant must be negative
  const double residual = (w.array() - c).abs().maxCoeff();
  const double scale = w.lpNorm<Eigen::Infinity>();
  if (residual / scale >= tol) return std::nullopt;
  SolitonCertificate cert;
  cert.beta = -c / 2.0;
  cert.a_star = a.values;
  cert.residual = residual;
  cert.derivation_diag = ricci_vector(roots, a).array() - cert.beta;
  return cert;
}

std::optional<ExactSolitonCertificate> soliton_test_exact(const RootSystem& roots,
                                                          const RatVec& a) {
  const int m = roots.m();
  if (static_cast<int>(a.size()) != m)
    throw DimensionMismatchError("structure vector length mismatch");
  if (m == 0) return std::nullopt;
  RatVec w(m, Rat(0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) w[i] += Rat(roots.gram(i, j)) * a[j];
  for (int i = 1; i < m; ++i)
    if (w[i] != w[0]) return std::nullopt;
  if (!(w[0] > Rat(0))) return std::nullopt;
  ExactSolitonCertificate cert;
  cert.beta = -w[0] / 2;
  cert.a_star = a;
  cert.derivation_diag = ricci_vector_exact(roots, a);
  for (auto& d : cert.derivation_diag) d -= cert.beta;
  return cert;
}

namespace {

// Positive primitive-integer solution of U v = lambda 1 with lambda > 0,
// searched exactly over ker PU. Throws when no positive solution exists.
RatVec positive_gram_ray(const RootSystem& roots) {
  const int m = roots.m();
  RatMat pu(m - 1, RatVec(m, Rat(0)));
  for (int i = 0; i + 1 < m; ++i)
    for (int j = 0; j < m; ++j) pu[i][j] = Rat(roots.gram(i, j) - roots.gram(m - 1, j));
  std::vector<RatVec> kernel =
      m == 1 ? std::vector<RatVec>{RatVec{Rat(1)}} : nullspace(pu, m);

  const int dims = static_cast<int>(kernel.size());
  std::vector<LinearInequality> system;
  for (int row = 0; row < m; ++row) {
    LinearInequality pos;
    pos.coeffs.resize(dims);
    for (int d = 0; d < dims; ++d) pos.coeffs[d] = kernel[d][row];
    pos.constant = Rat(0);
    pos.strict = true;
    system.push_back(std::move(pos));
  }
  // lambda(v) = (U v)_1 must be positive as well.
  LinearInequality lam;
  lam.coeffs.assign(dims, Rat(0));
  lam.constant = Rat(0);
  lam.strict = true;
  for (int d = 0; d < dims; ++d)
    for (int j = 0; j < m; ++j) lam.coeffs[d] += Rat(roots.gram(0, j)) * kernel[d][j];
  system.push_back(std::move(lam));

  auto point = feasible_point(system, dims);
  if (!point)
    throw NoPositiveSolutionError("every solution of U v = lambda 1 has a nonpositive entry",
                                  kernel);
  RatVec v(m, Rat(0));
  for (int d = 0; d < dims; ++d)
    for (int row = 0; row < m; ++row) v[row] += (*point)[d] * kernel[d][row];
  return primitive_integer(v);
}

}  // namespace

SolitonSearchResult find_soliton_metric(const BracketSpec& spec, double tol) {
  const RootSystem roots = root_system(spec);
  const RatVec a_star = positive_gram_ray(roots);

  auto exact = soliton_test_exact(roots, a_star);
  if (!exact)
    // a_star lies in ker PU, so U a_star is exactly constant.
    throw Error("internal: positive kernel ray failed the exact soliton test");

  SolitonSearchResult result;
  result.exact = *exact;
  auto sv = StructureVector::from_exact(a_star);
  result.certificate = soliton_test(roots, sv, tol).value();

  // Recover ln q from Y ln q = ln(alpha^2 / a_star), minimum-norm least squares.
  const int m = roots.m();
  Eigen::VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    const double alpha = spec.entries()[i].alpha;
    b[i] = std::log(alpha * alpha / to_double(a_star[i]));
  }
  const Eigen::MatrixXd y = roots.root_matrix.cast<double>();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(y);
  const Eigen::VectorXd lnq = cod.solve(b);
  result.recovery_residual = (y * lnq - b).lpNorm<Eigen::Infinity>();
  if (result.recovery_residual < tol)
    result.metric = DiagonalMetric::from_values(lnq.array().exp());
  return result;
}

bool verify_derivation(const BracketSpec& spec, const Eigen::VectorXd& diag, double tol) {
  if (diag.size() != spec.dim()) throw DimensionMismatchError("diagonal has wrong dimension");
  for (const auto& e : spec.entries())
    if (std::abs(diag[e.j - 1] + diag[e.k - 1] - diag[e.l - 1]) >= tol) return false;
  return true;
}

bool verify_derivation_exact(const BracketSpec& spec, const RatVec& diag) {
  if (static_cast<int>(diag.size()) != spec.dim())
    throw DimensionMismatchError("diagonal has wrong dimension");
  for (const auto& e : spec.entries())
    if (diag[e.j - 1] + diag[e.k - 1] != diag[e.l - 1]) return false;
  return true;
}

}  // namespace nilflow
