#include <doctest.h>

#include <random>

#include "nilflow/catalog.hpp"
#include "nilflow/curvature.hpp"
#include "testutil.hpp"

using namespace nilflow;
using namespace testutil;

namespace {
const std::vector<std::string> kCatalogSpecs = {"h3", "l4", "h5", "p5", "r6", "heisenberg(3)"};
}

TEST_CASE("ricci_form_oracle golden values") {
  SUBCASE("h3 unit metric: diag(-1/2, -1/2, 1/2)") {
    const auto data = ricci_form_oracle(BracketSpec(3, {ent(1, 2, 3)}), DiagonalMetric::ones(3));
    CHECK(data.ricci_vector.isApprox(vec({-0.5, -0.5, 0.5})));
    CHECK((data.ricci_form - data.ricci_vector.asDiagonal().toDenseMatrix()).isZero(1e-14));
  }
  SUBCASE("abelian: zero matrix") {
    const auto data = ricci_form_oracle(BracketSpec(4, {}), DiagonalMetric::ones(4));
    CHECK(data.ricci_form.isZero());
  }
  SUBCASE("shared target x5 produces an off-diagonal (2,3) entry") {
    const auto spec = BracketSpec(5, {ent(1, 2, 5), ent(1, 3, 5)});
    const auto data = ricci_form_oracle(spec, DiagonalMetric::ones(5));
    // the ad_{x2} . ad_{x3} pairing survives: -1/2 <ad_2, ad_3> = -1/2
    CHECK(data.ricci_form(1, 2) == doctest::Approx(-0.5));
  }
}

TEST_CASE("ricci_vector = -1/2 a^T Y") {
  SUBCASE("h3") {
    const auto roots = root_system(catalog::get("h3").spec.value());
    const auto r = ricci_vector(roots, StructureVector::from_exact({Rat(1)}));
    CHECK(r.isApprox(vec({-0.5, -0.5, 0.5})));
  }
  SUBCASE("l4 at a = (1,1): (1/2)(-2,-1,0,1)") {
    const auto roots = root_system(catalog::get("l4").spec.value());
    const auto r = ricci_vector(roots, StructureVector::from_exact({Rat(1), Rat(1)}));
    CHECK(r.isApprox(vec({-1.0, -0.5, 0.0, 0.5})));
  }
  SUBCASE("p5 at a = (2,2,1): -1/2 (4,1,3,0,-3)") {
    const auto roots = root_system(catalog::get("p5").spec.value());
    const auto r = ricci_vector(roots, StructureVector::from_exact({Rat(2), Rat(2), Rat(1)}));
    CHECK(r.isApprox(vec({-2.0, -0.5, -1.5, 0.0, 1.5})));
    const auto re = ricci_vector_exact(roots, {Rat(2), Rat(2), Rat(1)});
    CHECK(re == RatVec{Rat(-2), Rat(-1, 2), Rat(-3, 2), Rat(0), Rat(3, 2)});
  }
  SUBCASE("homogeneity: ricci_vector(a / lambda) = (1/lambda) ricci_vector(a)") {
    const auto roots = root_system(catalog::get("p5").spec.value());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.2, 5.0);
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd a = vec({dist(rng), dist(rng), dist(rng)});
      const double lambda = dist(rng);
      const Eigen::VectorXd r1 = ricci_vector(roots, StructureVector::from_values(a / lambda));
      const Eigen::VectorXd r2 = ricci_vector(roots, StructureVector::from_values(a)) / lambda;
      CHECK((r1 - r2).lpNorm<Eigen::Infinity>() < 1e-13);
    }
  }
}

TEST_CASE("is_ricci_diagonal") {
  std::mt19937_64 rng(5);
  const auto h3 = catalog::get("h3").spec.value();
  for (int trial = 0; trial < 10; ++trial)
    CHECK(is_ricci_diagonal(h3, DiagonalMetric::from_values(random_metric(rng, 3)), 1e-10));
  CHECK(!is_ricci_diagonal(BracketSpec(5, {ent(1, 2, 5), ent(1, 3, 5)}), DiagonalMetric::ones(5),
                           1e-10));
  const auto p5 = catalog::get("p5").spec.value();
  CHECK(is_ricci_diagonal(p5, DiagonalMetric::from_exact({Rat(1), Rat(4), Rat(1), Rat(2), Rat(4)}),
                          1e-10));
}

TEST_CASE("is_stably_ricci_diagonal") {
  for (const auto& name : kCatalogSpecs)
    CHECK(is_stably_ricci_diagonal(catalog::get(name).spec.value()).stable);

  const auto res = is_stably_ricci_diagonal(BracketSpec(5, {ent(1, 2, 5), ent(1, 3, 5)}));
  REQUIRE(!res.stable);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->row == 2);
  CHECK(res.witness->col == 3);
}

TEST_CASE("soliton_test") {
  SUBCASE("h3: beta = -3/2, trivially soliton for m = 1") {
    const auto roots = root_system(catalog::get("h3").spec.value());
    const auto cert = soliton_test(roots, StructureVector::from_exact({Rat(1)}));
    REQUIRE(cert.has_value());
    CHECK(cert->beta == doctest::Approx(-1.5).epsilon(1e-14));
    const auto exact = soliton_test_exact(roots, {Rat(1)});
    REQUIRE(exact.has_value());
    CHECK(exact->beta == Rat(-3, 2));
  }
  SUBCASE("p5: beta = -7/2 and derivation (1/2)(3,6,4,7,10)") {
    const auto roots = root_system(catalog::get("p5").spec.value());
    const auto exact = soliton_test_exact(roots, {Rat(2), Rat(2), Rat(1)});
    REQUIRE(exact.has_value());
    CHECK(exact->beta == Rat(-7, 2));
    CHECK(exact->derivation_diag ==
          RatVec{Rat(3, 2), Rat(3), Rat(2), Rat(7, 2), Rat(5)});
  }
  SUBCASE("h5: beta = -2") {
    const auto roots = root_system(catalog::get("h5").spec.value());
    const auto exact = soliton_test_exact(roots, {Rat(1), Rat(1)});
    REQUIRE(exact.has_value());
    CHECK(exact->beta == Rat(-2));
  }
  SUBCASE("non-soliton structure vector is rejected") {
    const auto roots = root_system(catalog::get("p5").spec.value());
    CHECK(!soliton_test(roots, StructureVector::from_values(vec({1, 2, 3}))).has_value());
    CHECK(!soliton_test_exact(roots, {Rat(1), Rat(2), Rat(3)}).has_value());
  }
  SUBCASE("scaling a by lambda scales beta; the verdict is scale-invariant") {
    const auto roots = root_system(catalog::get("p5").spec.value());
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> dist(0.1, 10.0);
    for (int trial = 0; trial < 10; ++trial) {
      const double lambda = dist(rng);
      const auto cert =
          soliton_test(roots, StructureVector::from_values(lambda * vec({2, 2, 1})));
      REQUIRE(cert.has_value());
      CHECK(cert->beta == doctest::Approx(-3.5 * lambda).epsilon(1e-12));
    }
  }
  SUBCASE("certificate soundness on catalog solitons") {
    for (const auto& name : kCatalogSpecs) {
      const auto entry = catalog::get(name);
      if (!entry.soliton_metric) continue;
      const auto roots = root_system(*entry.spec);
      const auto a = structure_vector(*entry.spec, *entry.soliton_metric);
      const auto cert = soliton_test(roots, a);
      REQUIRE_MESSAGE(cert.has_value(), name);
      CHECK(verify_derivation(*entry.spec, cert->derivation_diag, 1e-9));
      CHECK((cert->derivation_diag.array() > 0).all());
    }
  }
}

TEST_CASE("find_soliton_metric") {
  SUBCASE("p5: a* = (2,2,1) and a realizable metric") {
    const auto spec = catalog::get("p5").spec.value();
    const auto result = find_soliton_metric(spec);
    CHECK(result.exact.a_star == RatVec{Rat(2), Rat(2), Rat(1)});
    CHECK(result.exact.beta == Rat(-7, 2));
    REQUIRE(result.metric.has_value());
    const auto a = structure_vector(spec, *result.metric);
    CHECK(a.values.isApprox(vec({2, 2, 1}), 1e-9));
  }
  SUBCASE("r6: no positive solution, kernel witness returned") {
    try {
      find_soliton_metric(catalog::get("r6").spec.value());
      FAIL("expected NoPositiveSolutionError");
    } catch (const NoPositiveSolutionError& e) {
      CHECK(e.kernel_basis.size() == 3);
      // Every kernel vector has first coordinate zero, which forces the
      // infeasibility of v > 0.
      for (const auto& v : e.kernel_basis) CHECK(v[0] == Rat(0));
    }
  }
  SUBCASE("h3: soliton metric exists for any nonzero constant") {
    for (const Rat alpha : {Rat(1), Rat(2), Rat(1, 3)}) {
      const auto spec = BracketSpec(3, {ent(1, 2, 3, alpha)});
      const auto result = find_soliton_metric(spec);
      CHECK(result.exact.beta == Rat(-3, 2));
      REQUIRE(result.metric.has_value());
      const auto a = structure_vector(spec, *result.metric);
      CHECK(a.values[0] == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("verify_derivation") {
  const auto h3 = catalog::get("h3").spec.value();
  CHECK(verify_derivation_exact(h3, {Rat(1), Rat(1), Rat(2)}));
  CHECK(!verify_derivation_exact(h3, {Rat(1), Rat(1), Rat(3)}));
  const auto l4 = catalog::get("l4").spec.value();
  CHECK(verify_derivation_exact(l4, {Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)}));
  CHECK(verify_derivation(l4, vec({0.5, 1.0, 1.5, 2.0}), 1e-12));
}

TEST_CASE("oracle equivalence on stably Ricci-diagonal bases") {
  std::mt19937_64 rng(12345);
  for (const auto& name : kCatalogSpecs) {
    const auto spec = catalog::get(name).spec.value();
    REQUIRE(is_stably_ricci_diagonal(spec).stable);
    const auto roots = root_system(spec);
    for (int trial = 0; trial < 20; ++trial) {
      const auto metric = DiagonalMetric::from_values(random_metric(rng, spec.dim()));
      const auto data = ricci_form_oracle(spec, metric);
      const auto rv = ricci_vector(roots, structure_vector(spec, metric));
      CHECK((data.ricci_vector - rv).lpNorm<Eigen::Infinity>() < 1e-10);
      Eigen::MatrixXd off = data.ricci_form;
      off.diagonal().setZero();
      CHECK(off.lpNorm<Eigen::Infinity>() < 1e-10);
    }
  }
}
