#include "nilflow/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>

namespace nilflow {

std::string rat_to_string(const Rat& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) {
    s += '/';
    s += std::to_string(r.denominator());
  }
  return s;
}

std::optional<Rat> parse_rational(const std::string& text) {
  auto parse_int = [](std::string_view sv, std::int64_t& out) {
    if (sv.empty()) return false;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), out);
    return ec == std::errc() && ptr == sv.data() + sv.size();
  };
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  const auto slash = t.find('/');
  std::int64_t num = 0, den = 1;
  if (slash == std::string::npos) {
    if (!parse_int(t, num)) return std::nullopt;
  } else {
    if (!parse_int(std::string_view(t).substr(0, slash), num)) return std::nullopt;
    if (!parse_int(std::string_view(t).substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rat(num, den);
}

std::vector<double> to_double_vec(const RatVec& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](const Rat& r) { return to_double(r); });
  return out;
}

std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int piv = -1;
    for (int r = row; r < rows; ++r)
      if (m[r][col] != Rat(0)) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    const Rat inv = Rat(1) / m[row][col];
    for (int c = col; c < cols; ++c) m[row][c] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == Rat(0)) continue;
      const Rat factor = m[r][col];
      for (int c = col; c < cols; ++c) m[r][c] -= factor * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::vector<RatVec> nullspace(const RatMat& m, int cols) {
  RatMat work = m;
  const auto pivots = rref(work);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<RatVec> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, Rat(0));
    v[free] = Rat(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -work[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve_linear(const RatMat& m, const RatVec& rhs) {
  if (m.size() != rhs.size()) return std::nullopt;
  if (m.empty()) return RatVec{};
  const int cols = static_cast<int>(m[0].size());
  RatMat aug = m;
  for (std::size_t r = 0; r < aug.size(); ++r) aug[r].push_back(rhs[r]);
  const auto pivots = rref(aug);
  // Inconsistent iff a pivot lands in the augmented column.
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  RatVec x(cols, Rat(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

RatVec primitive_integer(const RatVec& v) {
  std::int64_t lcm = 1;
  for (const Rat& r : v) lcm = std::lcm(lcm, r.denominator());
  std::int64_t gcd = 0;
  for (const Rat& r : v) gcd = std::gcd(gcd, (r * lcm).numerator());
  if (gcd == 0) gcd = 1;
  RatVec out(v.size());
  int first_nonzero_sign = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] * Rat(lcm, gcd);
    if (first_nonzero_sign == 0 && out[i] != Rat(0))
      first_nonzero_sign = out[i] > Rat(0) ? 1 : -1;
  }
  if (first_nonzero_sign < 0)
    for (Rat& r : out) r = -r;
  return out;
}

namespace {

// Constraint on variables t_k..t_{n-1} plus constant term, sign > / >= 0.
bool all_zero(const RatVec& c) {
  return std::all_of(c.begin(), c.end(), [](const Rat& r) { return r == Rat(0); });
}

}  // namespace

std::optional<RatVec> feasible_point(const std::vector<LinearInequality>& system, int nvars) {
  // Eliminate variables from the highest index down, keeping the pre-step
  // system at each level for back-substitution.
  std::vector<std::vector<LinearInequality>> levels;
  std::vector<LinearInequality> current = system;

  for (int var = nvars - 1; var >= 0; --var) {
    levels.push_back(current);
    std::vector<LinearInequality> lowers, uppers, next;
    for (const auto& ineq : current) {
      const Rat c = ineq.coeffs[var];
      if (c > Rat(0))
        lowers.push_back(ineq);  // t_var > -(rest)/c
      else if (c < Rat(0))
        uppers.push_back(ineq);
      else
        next.push_back(ineq);
    }
    for (const auto& lo : lowers) {
      for (const auto& up : uppers) {
        // Combine c_lo t + r_lo > 0 (c_lo > 0) with c_up t + r_up > 0 (c_up < 0):
        // (-c_up) r_lo + c_lo r_up  must stay positive.
        LinearInequality combo;
        combo.coeffs.assign(nvars, Rat(0));
        const Rat wl = -up.coeffs[var];
        const Rat wu = lo.coeffs[var];
        for (int i = 0; i < nvars; ++i)
          combo.coeffs[i] = wl * lo.coeffs[i] + wu * up.coeffs[i];
        combo.constant = wl * lo.constant + wu * up.constant;
        combo.strict = lo.strict || up.strict;
        combo.coeffs[var] = Rat(0);
        // Rescale by a positive scalar to keep the entries small.
        std::int64_t lcm = combo.constant.denominator();
        for (const Rat& r : combo.coeffs) lcm = std::lcm(lcm, r.denominator());
        std::int64_t gcd = std::llabs((combo.constant * lcm).numerator());
        for (const Rat& r : combo.coeffs) gcd = std::gcd(gcd, (r * lcm).numerator());
        if (gcd != 0) {
          const Rat scale(lcm, gcd);
          for (Rat& r : combo.coeffs) r *= scale;
          combo.constant *= scale;
        }
        next.push_back(std::move(combo));
      }
    }
    // Prune exact duplicates to keep the blowup in check.
    std::set<std::string> seen;
    std::vector<LinearInequality> pruned;
    for (auto& ineq : next) {
      std::string key = ineq.strict ? "s" : "w";
      for (const auto& r : ineq.coeffs) key += rat_to_string(r) + ",";
      key += "|" + rat_to_string(ineq.constant);
      if (seen.insert(key).second) pruned.push_back(std::move(ineq));
    }
    current = std::move(pruned);
  }

  // After full elimination only constant constraints remain.
  for (const auto& ineq : current) {
    if (!all_zero(ineq.coeffs)) continue;
    if (ineq.strict ? !(ineq.constant > Rat(0)) : !(ineq.constant >= Rat(0)))
      return std::nullopt;
  }

  // Back-substitute: assign t_0 first (its level retains only t_0).
  RatVec point(nvars, Rat(0));
  for (int var = 0; var < nvars; ++var) {
    const auto& level = levels[nvars - 1 - var];
    std::optional<Rat> lb, ub;
    bool lb_strict = false, ub_strict = false;
    for (const auto& ineq : level) {
      const Rat c = ineq.coeffs[var];
      if (c == Rat(0)) continue;
      Rat rest = ineq.constant;
      for (int i = 0; i < var; ++i) rest += ineq.coeffs[i] * point[i];
      const Rat bound = -rest / c;
      if (c > Rat(0)) {  // t_var >(=) bound
        if (!lb || bound > *lb || (bound == *lb && ineq.strict)) {
          lb = bound;
          lb_strict = ineq.strict;
        }
      } else {
        if (!ub || bound < *ub || (bound == *ub && ineq.strict)) {
          ub = bound;
          ub_strict = ineq.strict;
        }
      }
    }
    Rat value(0);
    if (lb && ub) {
      if (*lb > *ub) return std::nullopt;
      if (*lb == *ub) {
        if (lb_strict || ub_strict) return std::nullopt;
        value = *lb;
      } else {
        value = (*lb + *ub) / 2;
      }
    } else if (lb) {
      value = lb_strict ? *lb + 1 : *lb;
    } else if (ub) {
      value = ub_strict ? *ub - 1 : *ub;
    }
    point[var] = value;
  }

  // The midpoint choice satisfies the original system by construction, but
  // verify to guard against degenerate input.
  for (const auto& ineq : system) {
    Rat v = ineq.constant;
    for (int i = 0; i < nvars; ++i) v += ineq.coeffs[i] * point[i];
    if (ineq.strict ? !(v > Rat(0)) : !(v >= Rat(0))) return std::nullopt;
  }
  return point;
}

}  // namespace nilflow
