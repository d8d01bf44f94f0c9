#include <CLI11.hpp>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Ricci flow and Lie bracket flow for metric nilpotent Lie algebras"};
  app.require_subcommand(1);

  nilflow::cli::CommandConfig cfg;

  auto add_input = [&](CLI::App* sub, bool metric_ok = true) {
    sub->add_option("--catalog", cfg.catalog_name, "use a catalog entry by name");
    sub->add_option("--algebra", cfg.algebra_path, "algebra JSON file");
    if (metric_ok) sub->add_option("--metric", cfg.metric_path, "metric JSON file");
  };
  auto add_gram = [&](CLI::App* sub) {
    sub->add_option("--gram", cfg.gram_path, "Gram matrix JSON file");
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out_path, "output file (default: stdout)");
    sub->add_option("--format", cfg.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_numeric = [&](CLI::App* sub) {
    sub->add_option("--t-end", cfg.t_end, "integration end time")->check(CLI::PositiveNumber);
    sub->add_option("--rtol", cfg.rtol, "relative tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--atol", cfg.atol, "absolute tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--samples", cfg.samples, "number of uniform sample times")
        ->check(CLI::PositiveNumber);
    sub->add_option("--sweep", cfg.sweep, "integrate N random initial conditions")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed for --sweep");
  };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "decision tolerance")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "check the Jacobi identity and nilpotency");
  add_input(validate, false);
  add_out(validate);

  auto* info = app.add_subcommand("info", "root system, Gram matrix, Ricci data, soliton test");
  add_input(info);
  add_out(info);
  add_tol(info);

  auto* soliton = app.add_subcommand("soliton", "search for a soliton metric");
  add_input(soliton, false);
  add_out(soliton);
  add_tol(soliton);

  auto* flow = app.add_subcommand("flow", "integrate the metric/bracket flow");
  add_input(flow);
  add_out(flow);
  add_numeric(flow);
  add_tol(flow);

  auto* projective = app.add_subcommand("projective", "integrate the projectivized bracket flow");
  add_input(projective);
  add_gram(projective);
  add_out(projective);
  add_numeric(projective);
  projective->add_option("--s0", cfg.s0, "initial affine coordinates (comma separated)")
      ->delimiter(',');
  projective->add_option("--max-m", cfg.max_m, "equilibrium enumeration budget");

  auto* equil = app.add_subcommand("equilibria", "enumerate and classify equilibria");
  add_input(equil, false);
  add_gram(equil);
  add_out(equil);
  equil->add_option("--max-m", cfg.max_m, "subset enumeration budget");

  auto* invariants = app.add_subcommand("invariants", "conserved monomial directions");
  add_input(invariants, false);
  add_out(invariants);

  auto* catalog = app.add_subcommand("catalog", "list or export catalog entries");
  catalog->add_option("--name", cfg.catalog_name, "entry to export (omit to list)");
  catalog->add_option("--out", cfg.out_path, "output file (default: stdout)");
  catalog->add_option("--metric-out", cfg.metric_out_path,
                      "also export the soliton metric to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  return nilflow::cli::run(cfg);
}
