#include <doctest.h>

#include "nilflow/rational.hpp"

using namespace nilflow;

TEST_CASE("rational parsing") {
  CHECK(*parse_rational("3/4") == Rat(3, 4));
  CHECK(*parse_rational("-3/4") == Rat(-3, 4));
  CHECK(*parse_rational("7") == Rat(7));
  CHECK(*parse_rational(" 1 / 2 ") == Rat(1, 2));
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("a/b").has_value());
  CHECK(!parse_rational("1.5").has_value());
  CHECK(rat_to_string(Rat(-7, 2)) == "-7/2");
  CHECK(rat_to_string(Rat(4, 2)) == "2");
}

TEST_CASE("rref and nullspace") {
  RatMat m = {{Rat(1), Rat(1), Rat(-1)}};
  auto basis = nullspace(m, 3);
  REQUIRE(basis.size() == 2);
  for (const auto& v : basis) CHECK(v[0] + v[1] - v[2] == Rat(0));

  RatMat full = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
  CHECK(nullspace(full, 2).empty());
}

TEST_CASE("solve_linear") {
  RatMat m = {{Rat(3), Rat(0)}, {Rat(0), Rat(3)}};
  auto x = solve_linear(m, {Rat(1), Rat(1)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Rat(1, 3));
  CHECK((*x)[1] == Rat(1, 3));

  RatMat sing = {{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
  CHECK(!solve_linear(sing, {Rat(0), Rat(1)}).has_value());
  auto y = solve_linear(sing, {Rat(2), Rat(2)});
  REQUIRE(y.has_value());
  CHECK((*y)[0] + (*y)[1] == Rat(2));
}

TEST_CASE("primitive_integer") {
  RatVec v = {Rat(2, 3), Rat(2, 3), Rat(1, 3)};
  auto p = primitive_integer(v);
  CHECK(p == RatVec{Rat(2), Rat(2), Rat(1)});
  auto n = primitive_integer({Rat(-2), Rat(4)});
  CHECK(n == RatVec{Rat(1), Rat(-2)});
}

TEST_CASE("fourier-motzkin feasibility") {
  // t0 > 0, t1 > 0, t0 + t1 < 1
  std::vector<LinearInequality> sys;
  sys.push_back({{Rat(1), Rat(0)}, Rat(0), true});
  sys.push_back({{Rat(0), Rat(1)}, Rat(0), true});
  sys.push_back({{Rat(-1), Rat(-1)}, Rat(1), true});
  auto p = feasible_point(sys, 2);
  REQUIRE(p.has_value());
  CHECK((*p)[0] > Rat(0));
  CHECK((*p)[1] > Rat(0));
  CHECK((*p)[0] + (*p)[1] < Rat(1));

  // Infeasible: t > 1 and t < 0.
  std::vector<LinearInequality> bad;
  bad.push_back({{Rat(1)}, Rat(-1), true});
  bad.push_back({{Rat(-1)}, Rat(0), true});
  CHECK(!feasible_point(bad, 1).has_value());

  // Constant row 0 > 0 is infeasible; 0 >= 0 is fine.
  std::vector<LinearInequality> zero_strict;
  zero_strict.push_back({{Rat(0)}, Rat(0), true});
  CHECK(!feasible_point(zero_strict, 1).has_value());
  std::vector<LinearInequality> zero_weak;
  zero_weak.push_back({{Rat(0)}, Rat(0), false});
  CHECK(feasible_point(zero_weak, 1).has_value());

  // Equality band: t >= 1 and t <= 1 pins t = 1.
  std::vector<LinearInequality> pin;
  pin.push_back({{Rat(1)}, Rat(-1), false});
  pin.push_back({{Rat(-1)}, Rat(1), false});
  auto q = feasible_point(pin, 1);
  REQUIRE(q.has_value());
  CHECK((*q)[0] == Rat(1));
}
