#include "nilflow/projective.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <cmath>
#include <set>

#include "nilflow/errors.hpp"

namespace nilflow {

ProjectiveSystem build_projective_system(const Eigen::MatrixXi& gram, bool from_algebra) {
  const int m = static_cast<int>(gram.rows());
  if (gram.cols() != m) throw DimensionMismatchError("Gram matrix must be square");
  if (m < 2) throw DimensionMismatchError("projectivization needs m >= 2");
  ProjectiveSystem sys;
  sys.gram = gram;
  sys.from_algebra = from_algebra;
  sys.p = Eigen::MatrixXi::Zero(m - 1, m);
  for (int i = 0; i < m - 1; ++i) {
    sys.p(i, i) = 1;
    sys.p(i, m - 1) = -1;
  }
  sys.normals = sys.p * gram;
  return sys;
}

Eigen::VectorXd eta(const ProjectiveSystem& sys, const Eigen::VectorXd& s) {
  const int m = sys.m();
  if (s.size() != m - 1) throw DimensionMismatchError("s has wrong dimension");
  const Eigen::MatrixXd n = sys.normals.cast<double>();
  return n.leftCols(m - 1) * s + n.col(m - 1);
}

RatVec eta_exact(const ProjectiveSystem& sys, const RatVec& s) {
  const int m = sys.m();
  if (static_cast<int>(s.size()) != m - 1) throw DimensionMismatchError("s has wrong dimension");
  RatVec out(m - 1, Rat(0));
  for (int i = 0; i < m - 1; ++i) {
    for (int j = 0; j < m - 1; ++j) out[i] += Rat(sys.normals(i, j)) * s[j];
    out[i] += Rat(sys.normals(i, m - 1));
  }
  return out;
}

Eigen::VectorXd s_from_a(const Eigen::VectorXd& a) {
  const auto m = a.size();
  if (m == 0) throw DimensionMismatchError("structure vector is empty");
  return a.head(m - 1) / a[m - 1];
}

SimplexState simplex_state(const ProjectiveSystem& sys, const Eigen::VectorXd& s, double tol) {
  return SimplexState{s, chamber_sign(sys, s, tol)};
}

SimplexState s_from_a(const ProjectiveSystem& sys, const StructureVector& a, double tol) {
  return simplex_state(sys, s_from_a(a.values), tol);
}

Eigen::VectorXd projective_rhs(const ProjectiveSystem& sys, const Eigen::VectorXd& s,
                               std::optional<double> a_m) {
  Eigen::VectorXd field = -s.cwiseProduct(eta(sys, s));
  if (a_m) field *= *a_m;
  return field;
}

std::vector<int> chamber_sign(const ProjectiveSystem& sys, const Eigen::VectorXd& s, double tol) {
  const Eigen::VectorXd e = eta(sys, s);
  std::vector<int> out(static_cast<std::size_t>(e.size()));
  for (Eigen::Index i = 0; i < e.size(); ++i)
    out[static_cast<std::size_t>(i)] = std::abs(e[i]) < tol ? 0 : (e[i] > 0 ? 1 : -1);
  return out;
}

ProjectiveTrajectory integrate_projective(const ProjectiveSystem& sys, const Eigen::VectorXd& s0,
                                          double t_end, const ProjectiveConfig& cfg) {
  const int d = sys.m() - 1;
  if (s0.size() != d) throw DimensionMismatchError("s0 has wrong dimension");
  for (Eigen::Index i = 0; i < s0.size(); ++i)
    if (s0[i] < 0.0) throw DimensionMismatchError("s0 must be componentwise nonnegative");

  // Coordinates starting exactly on a boundary face stay there; integrate the
  // reduced system in log coordinates for the active (positive) ones.
  std::vector<int> active;
  for (int i = 0; i < d; ++i)
    if (s0[i] > 0.0) active.push_back(i);
  const int na = static_cast<int>(active.size());

  ProjectiveTrajectory traj;
  const Eigen::MatrixXd n = sys.normals.cast<double>();

  auto unpack = [&](const Eigen::VectorXd& y) {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < na; ++i) s[active[i]] = std::exp(y[i]);
    return s;
  };

  auto rhs = [&](double, const Eigen::VectorXd& y) {
    const Eigen::VectorXd s = unpack(y);
    const Eigen::VectorXd e = n.leftCols(d) * s + n.col(d);
    Eigen::VectorXd dy(na);
    for (int i = 0; i < na; ++i) dy[i] = -e[active[i]];
    return dy;
  };

  auto sink = [&](double t, const Eigen::VectorXd& y) {
    if (!traj.samples.empty() && traj.samples.back().tau == t) return;
    traj.samples.push_back({t, unpack(y)});
  };

  Eigen::VectorXd y0(na);
  for (int i = 0; i < na; ++i) y0[i] = std::log(s0[active[i]]);

  std::vector<double> cps = cfg.sample_times;
  if (t_end > 1.0) cps.push_back(t_end - 1.0);  // for the convergence probe
  std::sort(cps.begin(), cps.end());

  ode::Options opt{cfg.rtol, cfg.atol, 0.0, cfg.max_steps};
  const auto status = ode::integrate(rhs, y0, 0.0, t_end, opt, cps, sink, &traj.step_stats);
  traj.status = to_integration_status(status);

  const Eigen::VectorXd s_end = traj.samples.back().s;
  traj.final_state = simplex_state(sys, s_end, 1e-9);
  if (t_end > 1.0) {
    // nearest sample at tau = t_end - 1 (hit exactly via checkpoint)
    const double probe = t_end - 1.0;
    double best = std::numeric_limits<double>::infinity();
    Eigen::VectorXd s_probe = traj.samples.front().s;
    for (const auto& smp : traj.samples) {
      const double dist = std::abs(smp.tau - probe);
      if (dist < best) {
        best = dist;
        s_probe = smp.s;
      }
    }
    traj.converged = (s_end - s_probe).lpNorm<Eigen::Infinity>() < 1e-9;
  }
  return traj;
}

namespace {

struct RawEquilibrium {
  RatVec s;
  std::vector<int> zero_set;
  std::vector<RatVec> directions;
};

// Affine span equality test: same dimension, mutual containment of basepoints,
// directions spanning the same space.
bool same_affine_set(const RawEquilibrium& a, const RawEquilibrium& b, int d) {
  if (a.directions.size() != b.directions.size()) return false;
  if (a.directions.empty()) return a.s == b.s;
  RatMat rows;
  for (const auto& v : a.directions) rows.push_back(v);
  RatMat stacked = rows;
  for (const auto& v : b.directions) stacked.push_back(v);
  RatVec diff(d);
  for (int i = 0; i < d; ++i) diff[i] = a.s[i] - b.s[i];
  stacked.push_back(diff);
  RatMat ra = rows, rs = stacked;
  if (rref(ra).size() != rref(rs).size()) return false;
  return true;
}

}  // namespace

EquilibriumSet equilibria(const ProjectiveSystem& sys, int max_m) {
  const int d = sys.m() - 1;
  if (d > max_m)
    throw SubsetBudgetError("subset enumeration over " + std::to_string(d) +
                            " coordinates exceeds budget " + std::to_string(max_m));

  std::vector<RawEquilibrium> raw;
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << d); ++mask) {
    std::vector<int> zeroed, free_idx;
    for (int i = 0; i < d; ++i)
      if (mask & (std::uint64_t(1) << i))
        zeroed.push_back(i);
      else
        free_idx.push_back(i);

    // eta_i(s) = 0 for i not in M, restricted to the free coordinates.
    const int nf = static_cast<int>(free_idx.size());
    RatMat a;
    RatVec rhs;
    for (int i : free_idx) {
      RatVec row(nf, Rat(0));
      for (int c = 0; c < nf; ++c) row[c] = Rat(sys.normals(i, free_idx[c]));
      a.push_back(std::move(row));
      rhs.push_back(Rat(-sys.normals(i, d)));
    }
    auto part = nf == 0 ? std::optional<RatVec>(RatVec{}) : solve_linear(a, rhs);
    if (!part) continue;
    std::vector<RatVec> null = nf == 0 ? std::vector<RatVec>{} : nullspace(a, nf);

    // Feasibility of s_free >= 0 over the affine family.
    RatVec base_free = *part;
    if (!null.empty()) {
      std::vector<LinearInequality> feas;
      for (int c = 0; c < nf; ++c) {
        LinearInequality ineq;
        ineq.coeffs.resize(null.size());
        for (std::size_t k = 0; k < null.size(); ++k) ineq.coeffs[k] = null[k][c];
        ineq.constant = base_free[c];
        ineq.strict = false;
        feas.push_back(std::move(ineq));
      }
      auto pt = feasible_point(feas, static_cast<int>(null.size()));
      if (!pt) continue;
      for (int c = 0; c < nf; ++c)
        for (std::size_t k = 0; k < null.size(); ++k) base_free[c] += (*pt)[k] * null[k][c];
    } else {
      bool ok = std::all_of(base_free.begin(), base_free.end(),
                            [](const Rat& r) { return r >= Rat(0); });
      if (!ok) continue;
    }

    RawEquilibrium eq;
    eq.s.assign(d, Rat(0));
    for (int c = 0; c < nf; ++c) eq.s[free_idx[c]] = base_free[c];
    for (int i : zeroed) eq.zero_set.push_back(i + 1);
    for (const auto& nv : null) {
      RatVec dir(d, Rat(0));
      for (int c = 0; c < nf; ++c) dir[free_idx[c]] = nv[c];
      eq.directions.push_back(std::move(dir));
    }
    bool dup = false;
    for (const auto& other : raw)
      if (same_affine_set(eq, other, d)) {
        dup = true;
        break;
      }
    if (!dup) raw.push_back(std::move(eq));
  }

  EquilibriumSet set;
  for (auto& r : raw) {
    EquilibriumPoint p;
    p.s = r.s;
    p.directions = r.directions;
    p.zero_set = r.zero_set;
    p.eta_values = eta_exact(sys, r.s);

    // Classification per the actual zero coordinates of the representative.
    bool repelling = false, interior = true;
    for (int i = 0; i < d; ++i) {
      if (p.s[i] == Rat(0)) {
        interior = false;
        if (p.eta_values[i] < Rat(0)) repelling = true;
      }
    }
    bool eta_zero = std::all_of(p.eta_values.begin(), p.eta_values.end(),
                                [](const Rat& r) { return r == Rat(0); });
    if (repelling)
      p.classification = EquilibriumClass::repelling;
    else if (interior && eta_zero)
      p.classification = EquilibriumClass::interior_soliton;
    else
      p.classification = EquilibriumClass::boundary;

    // Heuristic linearization of the time-changed field F_i = -s_i eta_i.
    Eigen::MatrixXd jac(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        jac(i, j) = -(i == j ? to_double(p.eta_values[i]) : 0.0) -
                    to_double(p.s[i]) * sys.normals(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(jac);
    for (int i = 0; i < d; ++i) p.jacobian_eigenvalues.push_back(es.eigenvalues()[i]);

    set.points.push_back(std::move(p));
  }
  return set;
}

std::vector<RatVec> pu_kernel(const ProjectiveSystem& sys) {
  const int m = sys.m();
  RatMat pu(m - 1, RatVec(m, Rat(0)));
  for (int i = 0; i < m - 1; ++i)
    for (int j = 0; j < m; ++j) pu[i][j] = Rat(sys.normals(i, j));
  std::vector<RatVec> out;
  for (const auto& v : nullspace(pu, m)) out.push_back(primitive_integer(v));
  return out;
}

std::optional<EquilibriumMatch> match_equilibrium(const EquilibriumSet& set,
                                                  const Eigen::VectorXd& s) {
  if (set.points.empty()) return std::nullopt;
  EquilibriumMatch best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < set.points.size(); ++idx) {
    const auto& p = set.points[idx];
    const int d = static_cast<int>(p.s.size());
    Eigen::VectorXd base(d);
    for (int i = 0; i < d; ++i) base[i] = to_double(p.s[i]);
    double dist;
    if (p.directions.empty()) {
      dist = (s - base).norm();
    } else {
      Eigen::MatrixXd dir(d, static_cast<int>(p.directions.size()));
      for (std::size_t k = 0; k < p.directions.size(); ++k)
        for (int i = 0; i < d; ++i) dir(i, static_cast<int>(k)) = to_double(p.directions[k][i]);
      const Eigen::VectorXd delta = s - base;
      const Eigen::VectorXd proj = dir * dir.colPivHouseholderQr().solve(delta);
      dist = (delta - proj).norm();
    }
    if (dist < best.distance) {
      best.distance = dist;
      best.index = static_cast<int>(idx);
    }
  }
  return best;
}

}  // namespace nilflow
