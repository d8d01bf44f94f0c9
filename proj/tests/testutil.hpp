#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "nilflow/algebra.hpp"

namespace testutil {

inline nilflow::BracketEntry ent(int j, int k, int l, nilflow::Rat alpha = nilflow::Rat(1)) {
  nilflow::BracketEntry e;
  e.j = j;
  e.k = k;
  e.l = l;
  e.alpha_exact = alpha;
  e.alpha = nilflow::to_double(alpha);
  return e;
}

inline nilflow::BracketEntry entf(int j, int k, int l, double alpha) {
  nilflow::BracketEntry e;
  e.j = j;
  e.k = k;
  e.l = l;
  e.alpha = alpha;
  return e;
}

inline Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

inline nilflow::RatVec rvec(std::initializer_list<nilflow::Rat> xs) { return nilflow::RatVec(xs); }

inline Eigen::VectorXd random_metric(std::mt19937_64& rng, int n, double lo = 0.1,
                                     double hi = 10.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = dist(rng);
  return q;
}

inline double max_rel_err(const Eigen::VectorXd& got, const Eigen::VectorXd& want) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < got.size(); ++i)
    worst = std::max(worst, std::abs(got[i] - want[i]) / std::max(1e-300, std::abs(want[i])));
  return worst;
}

/// Symmetric Hausdorff distance between two sampled curves, treating each
/// sample list as a polyline (point-to-segment distances), so the result is
/// insensitive to how densely either curve was sampled.
inline double hausdorff(const std::vector<Eigen::VectorXd>& a,
                        const std::vector<Eigen::VectorXd>& b) {
  auto seg_dist = [](const Eigen::VectorXd& p, const Eigen::VectorXd& u,
                     const Eigen::VectorXd& v) {
    const Eigen::VectorXd d = v - u;
    const double len2 = d.squaredNorm();
    if (len2 == 0.0) return (p - u).norm();
    const double t = std::clamp((p - u).dot(d) / len2, 0.0, 1.0);
    return (p - (u + t * d)).norm();
  };
  auto directed = [&](const std::vector<Eigen::VectorXd>& from,
                      const std::vector<Eigen::VectorXd>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i + 1 < to.size(); ++i)
        best = std::min(best, seg_dist(p, to[i], to[i + 1]));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace testutil
