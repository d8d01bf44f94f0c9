#include <doctest.h>

#include "nilflow/catalog.hpp"
#include "nilflow/curvature.hpp"
#include "nilflow/flow.hpp"
#include "testutil.hpp"

using namespace nilflow;

TEST_CASE("catalog listing") {
  const auto entries = catalog::list();
  CHECK(entries.size() >= 7);
  auto has = [&](const std::string& name) {
    for (const auto& [n, d] : entries)
      if (n == name) return true;
    return false;
  };
  CHECK(has("h3"));
  CHECK(has("l4b_gram"));
  for (const auto& [n, d] : entries)
    if (n == "l4b_gram") CHECK(d.find("gram-only") != std::string::npos);
  CHECK_THROWS_AS(catalog::get("nope"), UnknownEntryError);
}

TEST_CASE("every spec entry validates") {
  for (const char* name : {"h3", "l4", "h5", "p5", "r6", "heisenberg(4)"}) {
    const auto entry = catalog::get(name);
    REQUIRE(entry.spec.has_value());
    CHECK(validate_jacobi(*entry.spec).pass);
    CHECK_NOTHROW(nilpotency_class(*entry.spec));
    CHECK(!entry.expected.provenance.empty());
  }
}

TEST_CASE("expected Gram matrices") {
  for (const char* name : {"h3", "l4", "h5", "p5"}) {
    const auto entry = catalog::get(name);
    const auto roots = root_system(*entry.spec);
    REQUIRE(entry.expected.gram.has_value());
    CHECK(roots.gram == *entry.expected.gram);
  }
  // l4 in particular: U = diag(3,3).
  CHECK(*catalog::get("l4").expected.gram == (3 * Eigen::MatrixXi::Identity(2, 2)).eval());
}

TEST_CASE("heisenberg family") {
  SUBCASE("heisenberg(2) has the same root system as h5") {
    const auto a = root_system(*catalog::get("heisenberg(2)").spec);
    const auto b = root_system(*catalog::get("h5").spec);
    CHECK(a.root_matrix == b.root_matrix);
    CHECK(a.gram == b.gram);
  }
  SUBCASE("Gram matrix is 3 on the diagonal, 1 off it, for all r") {
    for (int r : {2, 3, 5, 8}) {
      const auto entry = catalog::get("heisenberg(" + std::to_string(r) + ")");
      const auto roots = root_system(*entry.spec);
      REQUIRE(roots.m() == r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) CHECK(roots.gram(i, j) == (i == j ? 3 : 1));
    }
  }
  SUBCASE("triples are (2i-1, 2i, 2r+1)") {
    const auto roots = root_system(*catalog::get("heisenberg(3)").spec);
    for (int i = 0; i < 3; ++i) {
      CHECK(roots.triples[i][0] == 2 * i + 1);
      CHECK(roots.triples[i][1] == 2 * i + 2);
      CHECK(roots.triples[i][2] == 7);
    }
  }
}

TEST_CASE("soliton metrics pass the exact test with the stored beta") {
  for (const char* name : {"h3", "l4", "h5", "p5", "heisenberg(5)"}) {
    const auto entry = catalog::get(name);
    REQUIRE_MESSAGE(entry.soliton_metric.has_value(), name);
    const auto roots = root_system(*entry.spec);
    const auto a = structure_vector(*entry.spec, *entry.soliton_metric);
    REQUIRE(a.exact.has_value());
    const auto cert = soliton_test_exact(roots, *a.exact);
    REQUIRE_MESSAGE(cert.has_value(), name);
    CHECK(cert->beta == *entry.expected.beta);
    if (entry.expected.structure_vector) CHECK(*a.exact == *entry.expected.structure_vector);
    if (entry.expected.ricci_vector)
      CHECK(ricci_vector_exact(roots, *a.exact) == *entry.expected.ricci_vector);
    if (entry.expected.derivation_diag)
      CHECK(cert->derivation_diag == *entry.expected.derivation_diag);
    // Float path agrees at 1e-12.
    const auto fcert = soliton_test(roots, a, 1e-12);
    REQUIRE(fcert.has_value());
    CHECK(std::abs(fcert->beta - to_double(*entry.expected.beta)) < 1e-12);
  }
}

TEST_CASE("p5 entry matches its construction") {
  const auto entry = catalog::get("p5");
  const auto& spec = *entry.spec;
  REQUIRE(spec.entries().size() == 3);
  CHECK(spec.entries()[0].j == 1);
  CHECK(spec.entries()[0].k == 3);
  CHECK(spec.entries()[0].l == 4);
  CHECK(spec.entries()[1].k == 4);
  CHECK(spec.entries()[1].l == 5);
  CHECK(spec.entries()[2].j == 2);
  REQUIRE(entry.soliton_metric.has_value());
  CHECK(entry.soliton_metric->q.isApprox(testutil::vec({1, 4, 1, 2, 4})));
  CHECK(*entry.expected.beta == Rat(-7, 2));
}

TEST_CASE("r6 has no soliton metric and 8 brackets") {
  const auto entry = catalog::get("r6");
  CHECK(!entry.soliton_metric.has_value());
  CHECK(entry.spec->dim() == 7);
  CHECK(entry.spec->entries().size() == 8);
}

TEST_CASE("expected kernel vectors annihilate the root matrix") {
  for (const char* name : {"h3", "l4", "p5"}) {
    const auto entry = catalog::get(name);
    const auto roots = root_system(*entry.spec);
    REQUIRE(!entry.expected.kernel_vectors.empty());
    for (const auto& d : entry.expected.kernel_vectors) CHECK((roots.root_matrix * d).isZero());
  }
}

TEST_CASE("expected closed-form exponents match the collapse analysis") {
  for (const char* name : {"h3", "p5"}) {
    const auto entry = catalog::get(name);
    const auto roots = root_system(*entry.spec);
    const auto cert = soliton_test_exact(roots, *entry.expected.structure_vector).value();
    const auto report = collapse_analysis_exact(roots, cert);
    CHECK(*report.exponents_exact == *entry.expected.closed_form_exponents);
  }
}
