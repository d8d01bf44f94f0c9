#include <doctest.h>

#include <sstream>

#include "nilflow/catalog.hpp"
#include "nilflow/flow.hpp"
#include "nilflow/io.hpp"
#include "testutil.hpp"

using namespace nilflow;
using namespace testutil;

TEST_CASE("algebra round trip is byte identical") {
  const auto spec = catalog::get("h3").spec.value();
  const std::string once = io::algebra_to_json(spec);
  const std::string twice = io::algebra_to_json(io::parse_algebra(once));
  CHECK(once == twice);
}

TEST_CASE("rational alphas survive the round trip exactly") {
  const std::string text = R"({"dim": 3, "brackets": [{"j":1,"k":2,"l":3,"alpha":"2/3"}]})";
  const auto spec = io::parse_algebra(text);
  REQUIRE(spec.is_rational());
  CHECK(*spec.entries()[0].alpha_exact == Rat(2, 3));
  const std::string out = io::algebra_to_json(spec);
  CHECK(out.find("\"2/3\"") != std::string::npos);
  CHECK(io::parse_algebra(out).entries()[0].alpha_exact == Rat(2, 3));
}

TEST_CASE("float alphas are accepted but not exact") {
  const auto spec =
      io::parse_algebra(R"({"dim": 3, "brackets": [{"j":1,"k":2,"l":3,"alpha":1.5}]})");
  CHECK(!spec.is_rational());
  CHECK(spec.entries()[0].alpha == doctest::Approx(1.5));
}

TEST_CASE("algebra schema violations carry field context") {
  CHECK_THROWS_AS(io::parse_algebra("not json"), ParseError);
  CHECK_THROWS_AS(io::parse_algebra(R"({"dim": 3})"), ParseError);
  CHECK_THROWS_WITH_AS(
      io::parse_algebra(R"({"dim": 3, "brackets": [{"j":1,"k":2,"l":3}]})"),
      doctest::Contains("alpha"), ParseError);
  CHECK_THROWS_WITH_AS(
      io::parse_algebra(R"({"dim": 3, "brackets": [{"j":1,"k":2,"l":3,"alpha":"x"}]})"),
      doctest::Contains("rational"), ParseError);
  CHECK_THROWS_AS(io::load_algebra("/nonexistent/file.json"), ParseError);
}

TEST_CASE("metric parsing") {
  const auto metric = io::parse_metric(R"({"q": [1, "1/2", 3]})", 3);
  REQUIRE(metric.exact.has_value());
  CHECK((*metric.exact)[1] == Rat(1, 2));
  CHECK_THROWS_WITH_AS(io::parse_metric(R"({"q": [1, -2, 3]})", 3),
                       doctest::Contains("positive"), ParseError);
  CHECK_THROWS_WITH_AS(io::parse_metric(R"({"q": [1, 2]})", 3), doctest::Contains("dimension"),
                       ParseError);
  const std::string out = io::metric_to_json(metric);
  CHECK(io::parse_metric(out, 3).q.isApprox(metric.q));
}

TEST_CASE("gram parsing") {
  const auto u = io::parse_gram(R"({"U": [[3,2,0],[2,3,2],[0,2,3]]})");
  CHECK(u(0, 1) == 2);
  CHECK_THROWS_WITH_AS(io::parse_gram(R"({"U": [[3,2],[2,3],[0,2]]})"), doctest::Contains("row"),
                       ParseError);
  CHECK_THROWS_WITH_AS(io::parse_gram(R"({"U": [[3,2],[1,3]]})"), doctest::Contains("symmetric"),
                       ParseError);
  const std::string out = io::gram_to_json(u);
  CHECK(io::parse_gram(out) == u);
}

TEST_CASE("format17 round trips doubles") {
  for (double x : {1.0 / 3.0, 2.0, 4.0 * std::pow(8.0, -3.0 / 7.0), 1e-300}) {
    CHECK(std::stod(io::format17(x)) == x);
  }
}

TEST_CASE("trajectory csv layout") {
  const auto spec = catalog::get("h3").spec.value();
  const auto roots = root_system(spec);
  IntegratorConfig cfg;
  cfg.t_end = 1.0;
  cfg.sample_times = {0.5, 1.0};
  const auto traj = integrate(roots, initial_state(spec, DiagonalMetric::ones(3)), cfg);
  const auto dirs = conserved_monomials(roots);
  std::ostringstream out;
  io::write_trajectory_csv(out, traj, roots, dirs);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,q_1,q_2,q_3,a_1,inv_1,inv_2");
  std::string row;
  std::getline(lines, row);
  CHECK(row.substr(0, 2) == "0,");
  // Every row has the full column count.
  int rows = 0;
  do {
    CHECK(std::count(row.begin(), row.end(), ',') == 6);
    ++rows;
  } while (std::getline(lines, row));
  CHECK(rows >= 3);
}

TEST_CASE("projective csv layout") {
  const auto sys = build_projective_system(root_system(catalog::get("p5").spec.value()).gram);
  const auto traj = integrate_projective(sys, vec({1, 1}), 2.0);
  std::ostringstream out;
  io::write_projective_csv(out, traj, sys);
  std::istringstream lines(out.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "tau,s_1,s_2,eta_1,eta_2");
}

TEST_CASE("certificate and equilibria json are well formed") {
  const auto spec = catalog::get("p5").spec.value();
  const auto result = find_soliton_metric(spec);
  const std::string cert = io::certificate_to_json(result.certificate, &result.exact);
  CHECK(cert.find("\"beta\"") != std::string::npos);
  CHECK(cert.find("-7/2") != std::string::npos);

  const auto sys = build_projective_system(root_system(spec).gram, true);
  const std::string eq = io::equilibria_to_json(equilibria(sys));
  CHECK(eq.find("interior-soliton") != std::string::npos);
  CHECK(eq.find("repelling") != std::string::npos);
}
