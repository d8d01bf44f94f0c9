#include "nilflow/catalog.hpp"

#include <regex>

#include "nilflow/errors.hpp"

namespace nilflow::catalog {

namespace {

BracketEntry entry(int j, int k, int l, Rat alpha = Rat(1)) {
  BracketEntry e;
  e.j = j;
  e.k = k;
  e.l = l;
  e.alpha_exact = alpha;
  e.alpha = to_double(alpha);
  return e;
}

Eigen::VectorXi ivec(std::initializer_list<int> xs) {
  Eigen::VectorXi v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (int x : xs) v[i++] = x;
  return v;
}

Eigen::MatrixXi imat(std::initializer_list<std::initializer_list<int>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  Eigen::MatrixXi m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (int x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

Entry make_h3() {
  Entry e;
  e.name = "h3";
  e.description = "3-dimensional Heisenberg algebra, [x1,x2] = x3";
  e.spec = BracketSpec(3, {entry(1, 2, 3)});
  e.soliton_metric = DiagonalMetric::from_exact({Rat(1), Rat(1), Rat(1)});
  e.expected.beta = Rat(-3, 2);
  e.expected.structure_vector = RatVec{Rat(1)};
  e.expected.ricci_vector = RatVec{Rat(-1, 2), Rat(-1, 2), Rat(1, 2)};
  e.expected.gram = imat({{3}});
  e.expected.derivation_diag = RatVec{Rat(1), Rat(1), Rat(2)};
  e.expected.kernel_vectors = {ivec({1, 0, 1}), ivec({0, 1, 1})};
  e.expected.closed_form_exponents = RatVec{Rat(1, 3), Rat(1, 3), Rat(-1, 3)};
  e.expected.provenance = {{"beta", Provenance::reference},
                           {"structure_vector", Provenance::reference},
                           {"ricci_vector", Provenance::reference},
                           {"gram", Provenance::reference},
                           {"derivation_diag", Provenance::reference},
                           {"kernel_vectors", Provenance::reference},
                           {"closed_form_exponents", Provenance::reference}};
  return e;
}

Entry make_l4() {
  Entry e;
  e.name = "l4";
  e.description = "4-dimensional filiform algebra, [x1,x2] = x3, [x1,x3] = x4";
  e.spec = BracketSpec(4, {entry(1, 2, 3), entry(1, 3, 4)});
  e.soliton_metric = DiagonalMetric::from_exact({Rat(1), Rat(1), Rat(1), Rat(1)});
  e.expected.beta = Rat(-3, 2);
  e.expected.structure_vector = RatVec{Rat(1), Rat(1)};
  e.expected.ricci_vector = RatVec{Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2)};
  e.expected.gram = imat({{3, 0}, {0, 3}});
  e.expected.derivation_diag = RatVec{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2)};
  e.expected.kernel_vectors = {ivec({-1, 2, 1, 0}), ivec({1, -1, 0, 1})};
  e.expected.provenance = {{"beta", Provenance::reference},
                           {"structure_vector", Provenance::reference},
                           {"ricci_vector", Provenance::reference},
                           {"gram", Provenance::reference},
                           {"derivation_diag", Provenance::reference},
                           {"kernel_vectors", Provenance::derived}};
  return e;
}

Entry make_heisenberg(int r) {
  Entry e;
  e.name = "heisenberg(" + std::to_string(r) + ")";
  e.description = std::to_string(2 * r + 1) + "-dimensional Heisenberg algebra";
  std::vector<BracketEntry> brackets;
  for (int i = 1; i <= r; ++i) brackets.push_back(entry(2 * i - 1, 2 * i, 2 * r + 1));
  e.spec = BracketSpec(2 * r + 1, std::move(brackets));
  e.soliton_metric = DiagonalMetric::from_exact(RatVec(2 * r + 1, Rat(1)));
  e.expected.structure_vector = RatVec(r, Rat(1));
  e.expected.beta = Rat(-(r + 2), 2);  // U 1 = (r + 2) 1 for the 3/1 Gram pattern
  Eigen::MatrixXi gram = Eigen::MatrixXi::Ones(r, r);
  gram.diagonal().setConstant(3);
  e.expected.gram = gram;
  e.expected.provenance = {{"beta", Provenance::derived},
                           {"structure_vector", Provenance::reference},
                           {"gram", Provenance::reference}};
  return e;
}

Entry make_h5() {
  Entry e = make_heisenberg(2);
  e.name = "h5";
  e.description = "5-dimensional Heisenberg algebra, [x1,x2] = [x3,x4] = x5";
  // Same root system as heisenberg(2); relations written in the usual order.
  e.spec = BracketSpec(5, {entry(1, 2, 5), entry(3, 4, 5)});
  e.expected.ricci_vector =
      RatVec{Rat(-1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2), Rat(1)};
  e.expected.beta = Rat(-2);
  e.expected.gram = imat({{3, 1}, {1, 3}});
  e.expected.provenance["ricci_vector"] = Provenance::reference;
  e.expected.provenance["gram"] = Provenance::reference;
  e.expected.provenance["beta"] = Provenance::derived;
  return e;
}

Entry make_p5() {
  Entry e;
  e.name = "p5";
  e.description = "5-dimensional algebra with [x1,x3]=x4, [x1,x4]=x5, [x2,x3]=x5";
  e.spec = BracketSpec(5, {entry(1, 3, 4), entry(1, 4, 5), entry(2, 3, 5)});
  e.soliton_metric = DiagonalMetric::from_exact({Rat(1), Rat(4), Rat(1), Rat(2), Rat(4)});
  e.expected.beta = Rat(-7, 2);
  e.expected.structure_vector = RatVec{Rat(2), Rat(2), Rat(1)};
  e.expected.ricci_vector = RatVec{Rat(-2), Rat(-1, 2), Rat(-3, 2), Rat(0), Rat(3, 2)};
  e.expected.gram = imat({{3, 0, 1}, {0, 3, 1}, {1, 1, 3}});
  e.expected.derivation_diag = RatVec{Rat(3, 2), Rat(3), Rat(2), Rat(7, 2), Rat(5)};
  e.expected.kernel_vectors = {ivec({-1, -2, 1, 0, -1}), ivec({1, 2, 0, 1, 2})};
  e.expected.closed_form_exponents =
      RatVec{Rat(4, 7), Rat(1, 7), Rat(3, 7), Rat(0), Rat(-3, 7)};
  e.expected.provenance = {{"beta", Provenance::reference},
                           {"structure_vector", Provenance::reference},
                           {"ricci_vector", Provenance::reference},
                           {"gram", Provenance::reference},
                           {"derivation_diag", Provenance::reference},
                           {"kernel_vectors", Provenance::derived},
                           {"closed_form_exponents", Provenance::reference}};
  return e;
}

Entry make_r6(const std::vector<Rat>& alphas) {
  Entry e;
  e.name = "r6";
  e.description =
      "7-dimensional algebra with [x1,xi]=x_{i+1} (i=2..6), [x2,xi]=x_{i+2} (i=3..5); "
      "admits no soliton metric";
  std::vector<BracketEntry> brackets;
  int idx = 0;
  for (int i = 2; i <= 6; ++i) brackets.push_back(entry(1, i, i + 1, alphas[idx++]));
  for (int i = 3; i <= 5; ++i) brackets.push_back(entry(2, i, i + 2, alphas[idx++]));
  e.spec = BracketSpec(7, std::move(brackets));
  e.expected.provenance = {{"gram", Provenance::derived}};
  return e;
}

Entry make_l4b_gram() {
  Entry e;
  e.name = "l4b_gram";
  e.description = "gram-only 3x3 example; interior fixed point is sign-infeasible";
  e.gram_only = imat({{3, 2, 0}, {2, 3, 2}, {0, 2, 3}});
  e.expected.gram = *e.gram_only;
  e.expected.kernel_vectors = {ivec({1, -1, 1})};
  e.expected.provenance = {{"gram", Provenance::reference},
                           {"kernel_vectors", Provenance::reference}};
  return e;
}

}  // namespace

Entry get(const std::string& name) {
  if (name == "h3") return make_h3();
  if (name == "l4") return make_l4();
  if (name == "h5") return make_h5();
  if (name == "p5") return make_p5();
  if (name == "r6") return make_r6(std::vector<Rat>(8, Rat(1)));
  if (name == "l4b_gram") return make_l4b_gram();
  static const std::regex heis(R"(heisenberg\((\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, heis)) {
    const int r = std::stoi(m[1].str());
    if (r >= 1 && r <= 1000) return make_heisenberg(r);
  }
  throw UnknownEntryError("unknown catalog entry: " + name);
}

std::vector<std::pair<std::string, std::string>> list() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const char* n : {"h3", "l4", "h5", "p5", "r6"}) out.emplace_back(n, get(n).description);
  out.emplace_back("heisenberg(r)",
                   "(2r+1)-dimensional Heisenberg family; instantiate as heisenberg(2), ...");
  out.emplace_back("l4b_gram", get("l4b_gram").description + " [gram-only]");
  return out;
}

}  // namespace nilflow::catalog
