#include "cli_app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "nilflow/catalog.hpp"
#include "nilflow/curvature.hpp"
#include "nilflow/flow.hpp"
#include "nilflow/io.hpp"
#include "nilflow/projective.hpp"

namespace nilflow::cli {

using nlohmann::json;

namespace {

struct Inputs {
  std::string name;
  std::optional<BracketSpec> spec;
  std::optional<DiagonalMetric> metric;        // explicit or catalog soliton metric
  std::optional<Eigen::MatrixXi> gram;         // gram-only route
  bool gram_from_algebra = false;
};

int input_source_count(const CommandConfig& cfg) {
  return (cfg.catalog_name.empty() ? 0 : 1) + (cfg.algebra_path.empty() ? 0 : 1) +
         (cfg.gram_path.empty() ? 0 : 1);
}

Inputs resolve_inputs(const CommandConfig& cfg) {
  Inputs in;
  if (!cfg.catalog_name.empty()) {
    const auto entry = catalog::get(cfg.catalog_name);
    in.name = entry.name;
    in.spec = entry.spec;
    in.gram = entry.gram_only;
    in.gram_from_algebra = entry.spec.has_value();
    if (!cfg.metric_path.empty() && in.spec)
      in.metric = io::load_metric(cfg.metric_path, in.spec->dim());
    else
      in.metric = entry.soliton_metric;
  } else if (!cfg.algebra_path.empty()) {
    in.name = cfg.algebra_path;
    in.spec = io::load_algebra(cfg.algebra_path);
    in.gram_from_algebra = true;
    if (!cfg.metric_path.empty()) in.metric = io::load_metric(cfg.metric_path, in.spec->dim());
  } else if (!cfg.gram_path.empty()) {
    in.name = cfg.gram_path;
    in.gram = io::load_gram(cfg.gram_path);
    in.gram_from_algebra = false;
  }
  if (in.spec && !in.metric) in.metric = DiagonalMetric::ones(in.spec->dim());
  return in;
}

json dvec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json imat_json(const Eigen::MatrixXi& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

void emit(const CommandConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty())
    std::cout << text;
  else
    io::write_file(cfg.out_path, text);
}

int sweep_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NILFLOW_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return static_cast<int>(n);
}

std::vector<double> sample_grid(double t_end, int samples) {
  std::vector<double> grid;
  const int n = std::max(1, samples);
  for (int i = 1; i <= n; ++i) grid.push_back(t_end * i / n);
  return grid;
}

int cmd_validate(const CommandConfig& cfg, const Inputs& in) {
  if (!in.spec) throw ParseError("validate requires an algebra input");
  const auto report = validate_jacobi(*in.spec);
  json j = json::parse(io::jacobi_report_to_json(report));
  int exit_code = report.pass ? 0 : 1;
  if (report.pass) {
    try {
      j["nilpotency_class"] = nilpotency_class(*in.spec);
      j["nilpotent"] = true;
    } catch (const NotNilpotentError& e) {
      j["nilpotent"] = false;
      j["error"] = e.what();
      exit_code = 1;
    }
  }
  emit(cfg, j.dump(2) + "\n");
  return exit_code;
}

int cmd_info(const CommandConfig& cfg, const Inputs& in) {
  if (!in.spec) throw ParseError("info requires an algebra input");
  const auto& spec = *in.spec;
  json j;
  j["name"] = in.name;
  j["dim"] = spec.dim();
  j["jacobi"] = validate_jacobi(spec).pass;
  try {
    j["nilpotency_class"] = nilpotency_class(spec);
  } catch (const NotNilpotentError& e) {
    j["nilpotency_error"] = e.what();
  }
  const auto roots = root_system_allow_abelian(spec);
  j["m"] = roots.m();
  json triples = json::array();
  for (const auto& t : roots.triples) triples.push_back({t[0], t[1], t[2]});
  j["triples"] = std::move(triples);
  j["root_matrix"] = imat_json(roots.root_matrix);
  j["gram"] = imat_json(roots.gram);
  const auto srd = is_stably_ricci_diagonal(spec);
  j["stably_ricci_diagonal"] = srd.stable;
  j["metric"] = dvec(in.metric->q);
  if (roots.m() > 0) {
    const auto a = structure_vector(spec, *in.metric);
    j["structure_vector"] = dvec(a.values);
    j["ricci_vector"] = dvec(ricci_vector(roots, a));
    if (auto cert = soliton_test(roots, a, cfg.tol)) {
      j["soliton"] = true;
      j["beta"] = cert->beta;
    } else {
      j["soliton"] = false;
    }
  }
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_soliton(const CommandConfig& cfg, const Inputs& in) {
  if (!in.spec) throw ParseError("soliton requires an algebra input");
  json j;
  try {
    const auto result = find_soliton_metric(*in.spec, cfg.tol);
    j = json::parse(io::certificate_to_json(result.certificate, &result.exact));
    j["found"] = true;
    j["recovery_residual"] = result.recovery_residual;
    if (result.metric) {
      j["metric"] = json::parse(io::metric_to_json(*result.metric));
    } else {
      j["metric"] = nullptr;
      j["note"] = "structure vector is not realizable by a diagonal metric over this basis";
    }
  } catch (const NoPositiveSolutionError& e) {
    j["found"] = false;
    j["message"] = "no positive solution";
    j["detail"] = e.what();
    json basis = json::array();
    for (const auto& v : e.kernel_basis) {
      json row = json::array();
      for (const auto& r : v) row.push_back(rat_to_string(r));
      basis.push_back(std::move(row));
    }
    j["kernel_basis"] = std::move(basis);
  }
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

json step_stats_json(const ode::StepStats& st) {
  return json{{"accepted", st.accepted}, {"rejected", st.rejected}, {"max_error", st.max_error}};
}

json flow_report(const BracketSpec& spec, const RootSystem& roots, const Trajectory& traj,
                 const std::vector<Eigen::VectorXi>& dirs, double tol) {
  json rep;
  rep["status"] = traj.status == IntegrationStatus::ok
                      ? "ok"
                      : (traj.status == IntegrationStatus::step_limit ? "step_limit"
                                                                      : "step_underflow");
  rep["step_stats"] = step_stats_json(traj.step_stats);
  json dirs_json = json::array();
  for (const auto& d : dirs) {
    json v = json::array();
    for (Eigen::Index i = 0; i < d.size(); ++i) v.push_back(d[i]);
    dirs_json.push_back(std::move(v));
  }
  rep["conserved_directions"] = std::move(dirs_json);
  rep["invariant_drift"] = monitor_invariants(traj, dirs);

  const auto& s0 = traj.samples.front();
  const auto a0 = structure_vector(spec, s0.q);
  if (roots.m() > 0) {
    if (auto cert = soliton_test(roots, a0, tol)) {
      const auto ric = ricci_vector(roots, a0);
      rep["collapse"] = json::parse(io::collapse_report_to_json(
          collapse_analysis(roots, *cert, ric)));
      rep["collapse"]["kind"] = "soliton";
    } else {
      const auto emp = empirical_collapse(traj);
      rep["collapse"] = {{"kind", "empirical"},
                         {"normalized_final", dvec(emp.normalized_final)},
                         {"fitted_exponents", dvec(emp.fitted_exponents)}};
    }
  }
  rep["final"] = {{"t", traj.samples.back().t},
                  {"q", dvec(traj.samples.back().q.q)},
                  {"a", dvec(traj.samples.back().a.values)}};
  return rep;
}

int cmd_flow(const CommandConfig& cfg, const Inputs& in) {
  if (!in.spec) throw ParseError("flow requires an algebra input");
  const auto& spec = *in.spec;
  const auto roots = root_system_allow_abelian(spec);
  const auto dirs = conserved_monomials(roots);

  IntegratorConfig icfg;
  icfg.rtol = cfg.rtol;
  icfg.atol = cfg.atol;
  icfg.t_end = cfg.t_end;
  icfg.sample_times = sample_grid(cfg.t_end, cfg.samples);

  if (cfg.sweep > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(std::log(0.1), std::log(10.0));
    std::vector<FlowState> states;
    for (int r = 0; r < cfg.sweep; ++r) {
      Eigen::VectorXd q(spec.dim());
      for (int i = 0; i < spec.dim(); ++i) q[i] = std::exp(dist(rng));
      states.push_back(initial_state(spec, DiagonalMetric::from_values(q)));
    }
    const auto trajs = integrate_batch(roots, states, icfg, sweep_threads());
    std::ostringstream csv;
    json reports = json::array();
    for (int r = 0; r < cfg.sweep; ++r) {
      std::ostringstream one;
      io::write_trajectory_csv(one, trajs[r], roots, dirs);
      std::istringstream lines(one.str());
      std::string line;
      std::getline(lines, line);
      if (r == 0) csv << "run," << line << "\n";
      while (std::getline(lines, line)) csv << r << "," << line << "\n";
      reports.push_back(flow_report(spec, roots, trajs[r], dirs, cfg.tol));
    }
    if (cfg.format == "json") {
      emit(cfg, reports.dump(2) + "\n");
    } else {
      emit(cfg, csv.str());
      std::cout << reports.dump(2) << "\n";
    }
    return 0;
  }

  const auto traj = integrate(roots, initial_state(spec, *in.metric), icfg);
  const json rep = flow_report(spec, roots, traj, dirs, cfg.tol);
  if (cfg.format == "json") {
    json j = rep;
    json samples = json::array();
    for (const auto& s : traj.samples)
      samples.push_back({{"t", s.t}, {"q", dvec(s.q.q)}, {"a", dvec(s.a.values)}});
    j["samples"] = std::move(samples);
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    io::write_trajectory_csv(csv, traj, roots, dirs);
    emit(cfg, csv.str());
    std::cout << rep.dump(2) << "\n";
  }
  return traj.status == IntegrationStatus::ok ? 0 : 1;
}

json projective_summary(const ProjectiveSystem& sys, const ProjectiveTrajectory& traj,
                        int max_m) {
  json sum;
  sum["converged"] = traj.converged;
  sum["final_s"] = dvec(traj.final_state.s);
  sum["chamber"] = traj.final_state.chamber;
  if (sys.m() - 1 <= max_m) {
    const auto eq = equilibria(sys, max_m);
    if (auto match = match_equilibrium(eq, traj.final_state.s)) {
      const auto& p = eq.points[static_cast<std::size_t>(match->index)];
      json pj;
      pj["distance"] = match->distance;
      json s = json::array();
      for (const auto& r : p.s) s.push_back(to_double(r));
      pj["s"] = std::move(s);
      switch (p.classification) {
        case EquilibriumClass::interior_soliton: pj["classification"] = "interior-soliton"; break;
        case EquilibriumClass::repelling: pj["classification"] = "repelling"; break;
        case EquilibriumClass::boundary: pj["classification"] = "boundary"; break;
      }
      sum["nearest_equilibrium"] = std::move(pj);
    }
  }
  return sum;
}

int cmd_projective(const CommandConfig& cfg, const Inputs& in) {
  Eigen::MatrixXi gram;
  std::optional<Eigen::VectorXd> s0;
  bool from_algebra = false;
  if (in.spec) {
    const auto roots = root_system(*in.spec);
    gram = roots.gram;
    from_algebra = true;
    if (roots.m() >= 2) s0 = s_from_a(structure_vector(*in.spec, *in.metric).values);
  } else if (in.gram) {
    gram = *in.gram;
  } else {
    throw ParseError("projective requires an algebra or gram input");
  }
  const auto sys = build_projective_system(gram, from_algebra);
  const int d = sys.m() - 1;
  if (!cfg.s0.empty()) {
    if (static_cast<int>(cfg.s0.size()) != d)
      throw ParseError("--s0 needs " + std::to_string(d) + " entries");
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = cfg.s0[i];
    s0 = v;
  }
  if (!s0) s0 = Eigen::VectorXd::Ones(d);

  ProjectiveConfig pcfg;
  pcfg.rtol = cfg.rtol;
  pcfg.atol = cfg.atol;
  pcfg.sample_times = sample_grid(cfg.t_end, cfg.samples);

  if (cfg.sweep > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(0.0, 5.0);
    std::ostringstream csv;
    json reports = json::array();
    for (int r = 0; r < cfg.sweep; ++r) {
      Eigen::VectorXd start(d);
      for (int i = 0; i < d; ++i) {
        double v = 0.0;
        while (v <= 0.0) v = dist(rng);
        start[i] = v;
      }
      const auto traj = integrate_projective(sys, start, cfg.t_end, pcfg);
      std::ostringstream one;
      io::write_projective_csv(one, traj, sys);
      std::istringstream lines(one.str());
      std::string line;
      std::getline(lines, line);
      if (r == 0) csv << "run," << line << "\n";
      while (std::getline(lines, line)) csv << r << "," << line << "\n";
      reports.push_back(projective_summary(sys, traj, cfg.max_m));
    }
    if (cfg.format == "json") {
      emit(cfg, reports.dump(2) + "\n");
    } else {
      emit(cfg, csv.str());
      std::cout << reports.dump(2) << "\n";
    }
    return 0;
  }

  const auto traj = integrate_projective(sys, *s0, cfg.t_end, pcfg);
  const json sum = projective_summary(sys, traj, cfg.max_m);
  if (cfg.format == "json") {
    json j = sum;
    json samples = json::array();
    for (const auto& smp : traj.samples) samples.push_back({{"tau", smp.tau}, {"s", dvec(smp.s)}});
    j["samples"] = std::move(samples);
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream csv;
    io::write_projective_csv(csv, traj, sys);
    emit(cfg, csv.str());
    std::cout << sum.dump(2) << "\n";
  }
  return traj.status == IntegrationStatus::ok ? 0 : 1;
}

int cmd_equilibria(const CommandConfig& cfg, const Inputs& in) {
  Eigen::MatrixXi gram;
  bool from_algebra = false;
  if (in.spec) {
    gram = root_system(*in.spec).gram;
    from_algebra = true;
  } else if (in.gram) {
    gram = *in.gram;
  } else {
    throw ParseError("equilibria requires an algebra or gram input");
  }
  const auto sys = build_projective_system(gram, from_algebra);
  const auto set = equilibria(sys, cfg.max_m);
  emit(cfg, io::equilibria_to_json(set));
  return 0;
}

int cmd_invariants(const CommandConfig& cfg, const Inputs& in) {
  if (!in.spec) throw ParseError("invariants requires an algebra input");
  const auto roots = root_system_allow_abelian(*in.spec);
  const auto dirs = conserved_monomials(roots);
  json j;
  j["directions"] = json::array();
  j["monomials"] = json::array();
  for (const auto& d : dirs) {
    json v = json::array();
    std::string mono;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
      v.push_back(d[i]);
      if (d[i] != 0) {
        if (!mono.empty()) mono += " * ";
        mono += "q" + std::to_string(i + 1);
        if (d[i] != 1) mono += "^" + std::to_string(d[i]);
      }
    }
    j["directions"].push_back(std::move(v));
    j["monomials"].push_back(mono.empty() ? "1" : mono);
  }
  emit(cfg, j.dump(2) + "\n");
  return 0;
}

int cmd_catalog(const CommandConfig& cfg) {
  if (cfg.catalog_name.empty()) {
    json j = json::array();
    for (const auto& [name, desc] : catalog::list())
      j.push_back({{"name", name}, {"description", desc}});
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  const auto entry = catalog::get(cfg.catalog_name);
  if (entry.is_gram_only()) {
    emit(cfg, io::gram_to_json(*entry.gram_only));
    return 0;
  }
  emit(cfg, io::algebra_to_json(*entry.spec));
  if (!cfg.metric_out_path.empty() && entry.soliton_metric)
    io::write_file(cfg.metric_out_path, io::metric_to_json(*entry.soliton_metric));
  return 0;
}

}  // namespace

int run(const CommandConfig& cfg) {
  try {
    if (cfg.subcommand == "catalog") return cmd_catalog(cfg);

    if (input_source_count(cfg) != 1) {
      std::cerr << "error: exactly one input source required (--catalog NAME | --algebra FILE"
                   " | --gram FILE)\n";
      return 2;
    }
    const Inputs in = resolve_inputs(cfg);

    if (cfg.subcommand == "validate") return cmd_validate(cfg, in);
    if (cfg.subcommand == "info") return cmd_info(cfg, in);
    if (cfg.subcommand == "soliton") return cmd_soliton(cfg, in);
    if (cfg.subcommand == "flow") return cmd_flow(cfg, in);
    if (cfg.subcommand == "projective") return cmd_projective(cfg, in);
    if (cfg.subcommand == "equilibria") return cmd_equilibria(cfg, in);
    if (cfg.subcommand == "invariants") return cmd_invariants(cfg, in);
    std::cerr << "error: unknown subcommand '" << cfg.subcommand << "'\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownEntryError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SubsetBudgetError& e) {
    std::cerr << "input error: " << e.what() << " (raise --max-m)\n";
    return 2;
  } catch (const NotNilpotentError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  } catch (const AbelianAlgebraError& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace nilflow::cli
