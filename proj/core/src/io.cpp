#include "nilflow/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace nilflow::io {

using nlohmann::json;

std::string format17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << content;
}

namespace {

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON in " + what);
  return j;
}

// Number or "p/q" string; exact for strings and integers.
void read_scalar(const json& v, const std::string& field, double& out,
                 std::optional<Rat>& exact) {
  if (v.is_string()) {
    auto r = parse_rational(v.get<std::string>());
    if (!r) throw ParseError("field '" + field + "': cannot parse rational '" +
                             v.get<std::string>() + "'");
    exact = *r;
    out = to_double(*r);
  } else if (v.is_number_integer()) {
    exact = Rat(v.get<std::int64_t>());
    out = static_cast<double>(v.get<std::int64_t>());
  } else if (v.is_number()) {
    exact = std::nullopt;
    out = v.get<double>();
  } else {
    throw ParseError("field '" + field + "': expected a number or a 'p/q' string");
  }
}

json scalar_to_json(double value, const std::optional<Rat>& exact) {
  if (exact) {
    if (exact->denominator() == 1) return json(exact->numerator());
    return json(rat_to_string(*exact));
  }
  return json(value);
}

json ratvec_to_json(const RatVec& v) {
  json arr = json::array();
  for (const auto& r : v) arr.push_back(scalar_to_json(to_double(r), r));
  return arr;
}

json dvec_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

}  // namespace

BracketSpec parse_algebra(const std::string& json_text) {
  const json j = parse_json(json_text, "algebra file");
  if (!j.is_object() || !j.contains("dim") || !j.contains("brackets"))
    throw ParseError("algebra file must be an object with 'dim' and 'brackets'");
  if (!j["dim"].is_number_integer())
    throw ParseError("field 'dim': expected a positive integer");
  const int dim = j["dim"].get<int>();
  if (!j["brackets"].is_array()) throw ParseError("field 'brackets': expected an array");
  std::vector<BracketEntry> entries;
  int idx = 0;
  for (const auto& b : j["brackets"]) {
    const std::string where = "brackets[" + std::to_string(idx++) + "]";
    if (!b.is_object()) throw ParseError(where + ": expected an object");
    for (const char* f : {"j", "k", "l", "alpha"})
      if (!b.contains(f)) throw ParseError(where + ": missing field '" + f + "'");
    BracketEntry e;
    for (const char* f : {"j", "k", "l"})
      if (!b[f].is_number_integer()) throw ParseError(where + "." + f + ": expected an integer");
    e.j = b["j"].get<int>();
    e.k = b["k"].get<int>();
    e.l = b["l"].get<int>();
    read_scalar(b["alpha"], where + ".alpha", e.alpha, e.alpha_exact);
    entries.push_back(std::move(e));
  }
  try {
    return BracketSpec(dim, std::move(entries));
  } catch (const DimensionMismatchError& err) {
    throw ParseError(std::string("algebra file: ") + err.what());
  }
}

BracketSpec load_algebra(const std::string& path) { return parse_algebra(read_file(path)); }

std::string algebra_to_json(const BracketSpec& spec) {
  json j;
  j["dim"] = spec.dim();
  j["brackets"] = json::array();
  for (const auto& e : spec.entries()) {
    json b;
    b["j"] = e.j;
    b["k"] = e.k;
    b["l"] = e.l;
    b["alpha"] = scalar_to_json(e.alpha, e.alpha_exact);
    j["brackets"].push_back(std::move(b));
  }
  return j.dump(2) + "\n";
}

DiagonalMetric parse_metric(const std::string& json_text, int expected_dim) {
  const json j = parse_json(json_text, "metric file");
  if (!j.is_object() || !j.contains("q") || !j["q"].is_array())
    throw ParseError("metric file must be an object with array field 'q'");
  const auto& arr = j["q"];
  if (expected_dim >= 0 && static_cast<int>(arr.size()) != expected_dim)
    throw ParseError("metric dimension " + std::to_string(arr.size()) +
                     " does not match algebra dimension " + std::to_string(expected_dim));
  Eigen::VectorXd q(static_cast<Eigen::Index>(arr.size()));
  RatVec exact(arr.size());
  bool all_exact = true;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    double v;
    std::optional<Rat> r;
    read_scalar(arr[i], "q[" + std::to_string(i) + "]", v, r);
    if (!(v > 0.0))
      throw ParseError("q[" + std::to_string(i) + "] must be strictly positive");
    q[static_cast<Eigen::Index>(i)] = v;
    if (r)
      exact[i] = *r;
    else
      all_exact = false;
  }
  if (all_exact) return DiagonalMetric::from_exact(std::move(exact));
  return DiagonalMetric::from_values(std::move(q));
}

DiagonalMetric load_metric(const std::string& path, int expected_dim) {
  return parse_metric(read_file(path), expected_dim);
}

std::string metric_to_json(const DiagonalMetric& metric) {
  json j;
  j["q"] = json::array();
  for (Eigen::Index i = 0; i < metric.q.size(); ++i) {
    std::optional<Rat> r;
    if (metric.exact) r = (*metric.exact)[static_cast<std::size_t>(i)];
    j["q"].push_back(scalar_to_json(metric.q[i], r));
  }
  return j.dump(2) + "\n";
}

Eigen::MatrixXi parse_gram(const std::string& json_text) {
  const json j = parse_json(json_text, "gram file");
  if (!j.is_object() || !j.contains("U") || !j["U"].is_array() || j["U"].empty())
    throw ParseError("gram file must be an object with nonempty array field 'U'");
  const auto& rows = j["U"];
  const int m = static_cast<int>(rows.size());
  Eigen::MatrixXi u(m, m);
  for (int r = 0; r < m; ++r) {
    if (!rows[r].is_array() || static_cast<int>(rows[r].size()) != m)
      throw ParseError("U[" + std::to_string(r) + "]: expected a row of length " +
                       std::to_string(m));
    for (int c = 0; c < m; ++c) {
      if (!rows[r][c].is_number_integer())
        throw ParseError("U[" + std::to_string(r) + "][" + std::to_string(c) +
                         "]: expected an integer");
      u(r, c) = rows[r][c].get<int>();
    }
  }
  if (u != u.transpose().eval()) throw ParseError("U must be symmetric");
  return u;
}

Eigen::MatrixXi load_gram(const std::string& path) { return parse_gram(read_file(path)); }

std::string gram_to_json(const Eigen::MatrixXi& gram) {
  json j;
  j["U"] = json::array();
  for (Eigen::Index r = 0; r < gram.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < gram.cols(); ++c) row.push_back(gram(r, c));
    j["U"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string certificate_to_json(const SolitonCertificate& cert,
                                const ExactSolitonCertificate* exact) {
  json j;
  j["beta"] = cert.beta;
  j["a_star"] = dvec_to_json(cert.a_star);
  j["residual"] = cert.residual;
  j["derivation_diag"] = dvec_to_json(cert.derivation_diag);
  if (exact) {
    j["exact"]["beta"] = rat_to_string(exact->beta);
    j["exact"]["a_star"] = ratvec_to_json(exact->a_star);
    j["exact"]["derivation_diag"] = ratvec_to_json(exact->derivation_diag);
  }
  return j.dump(2) + "\n";
}

std::string collapse_report_to_json(const CollapseReport& report) {
  json j;
  j["normalized_limit"] = dvec_to_json(report.normalized_limit);
  j["e_min_indices"] = report.e_min_indices;
  j["exponents"] = dvec_to_json(report.exponents);
  if (report.exponents_exact) {
    json arr = json::array();
    for (const auto& r : *report.exponents_exact) arr.push_back(rat_to_string(r));
    j["exponents_exact"] = std::move(arr);
  }
  return j.dump(2) + "\n";
}

std::string jacobi_report_to_json(const JacobiReport& report) {
  json j;
  j["pass"] = report.pass;
  j["exact"] = report.exact;
  j["violations"] = json::array();
  for (const auto& v : report.violations) {
    json item;
    item["triple"] = {v.a, v.b, v.c};
    item["residual"] = dvec_to_json(v.residual);
    j["violations"].push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

std::string equilibria_to_json(const EquilibriumSet& set) {
  json j;
  j["points"] = json::array();
  for (const auto& p : set.points) {
    json item;
    item["s"] = ratvec_to_json(p.s);
    item["zero_set"] = p.zero_set;
    switch (p.classification) {
      case EquilibriumClass::interior_soliton: item["classification"] = "interior-soliton"; break;
      case EquilibriumClass::repelling: item["classification"] = "repelling"; break;
      case EquilibriumClass::boundary: item["classification"] = "boundary"; break;
    }
    item["eta"] = ratvec_to_json(p.eta_values);
    if (!p.directions.empty()) {
      json dirs = json::array();
      for (const auto& d : p.directions) dirs.push_back(ratvec_to_json(d));
      item["directions"] = std::move(dirs);
    }
    json eig = json::array();
    for (const auto& z : p.jacobian_eigenvalues)
      eig.push_back(json{{"re", z.real()}, {"im", z.imag()}});
    item["jacobian_eigenvalues_heuristic"] = std::move(eig);
    j["points"].push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, const RootSystem& roots,
                          const std::vector<Eigen::VectorXi>& invariant_dirs) {
  out << "t";
  for (int i = 1; i <= roots.dim; ++i) out << ",q_" << i;
  for (int i = 1; i <= roots.m(); ++i) out << ",a_" << i;
  for (std::size_t i = 1; i <= invariant_dirs.size(); ++i) out << ",inv_" << i;
  out << "\n";
  for (const auto& s : traj.samples) {
    out << format17(s.t);
    for (Eigen::Index i = 0; i < s.q.q.size(); ++i) out << "," << format17(s.q.q[i]);
    for (Eigen::Index i = 0; i < s.a.values.size(); ++i) out << "," << format17(s.a.values[i]);
    for (const auto& d : invariant_dirs) {
      double lnv = 0.0;
      for (Eigen::Index i = 0; i < d.size(); ++i) lnv += d[i] * std::log(s.q.q[i]);
      out << "," << format17(std::exp(lnv));
    }
    out << "\n";
  }
}

void write_projective_csv(std::ostream& out, const ProjectiveTrajectory& traj,
                          const ProjectiveSystem& sys) {
  const int d = sys.m() - 1;
  out << "tau";
  for (int i = 1; i <= d; ++i) out << ",s_" << i;
  for (int i = 1; i <= d; ++i) out << ",eta_" << i;
  out << "\n";
  for (const auto& smp : traj.samples) {
    out << format17(smp.tau);
    for (int i = 0; i < d; ++i) out << "," << format17(smp.s[i]);
    const Eigen::VectorXd e = eta(sys, smp.s);
    for (int i = 0; i < d; ++i) out << "," << format17(e[i]);
    out << "\n";
  }
}

}  // namespace nilflow::io
