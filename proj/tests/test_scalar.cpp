#include "doctest.h"
#include "mqsym/render.hpp"
#include "mqsym/scalar.hpp"
#include "support.hpp"

using namespace mqsym;
using namespace mqsym::testing;

TEST_SUITE("scalar") {
  TEST_CASE("same-observable transformation functions reduce to a delta") {
    const Registry reg = spin_registry();
    const StateRef up = reg.state("Z", "up"), down = reg.state("Z", "down");
    CHECK(ScalarExpr::transform(up, up).is_one());
    CHECK(ScalarExpr::transform(up, down).is_zero());
    const ScalarExpr t = ScalarExpr::transform(up, reg.state("X", "plus"));
    CHECK(t.terms().size() == 1);
    CHECK(render(reg, t) == "<Z:up|X:plus>");
  }

  TEST_CASE("conjugation swaps bra and ket and conjugates coefficients") {
    const Registry reg = spin_registry();
    const StateRef up = reg.state("Z", "up"), plus = reg.state("X", "plus");
    const ScalarExpr s = ScalarExpr(ComplexRational{Rational(1), Rational(2)}) * ScalarExpr::transform(up, plus);
    const ScalarExpr expected =
        ScalarExpr(ComplexRational{Rational(1), Rational(-2)}) * ScalarExpr::transform(plus, up);
    CHECK(s.conjugate() == expected);
    CHECK(s.conjugate().conjugate() == s);
  }

  TEST_CASE("transformation functions commute and monomials stay sorted") {
    const Registry reg = spin_registry();
    const StateRef up = reg.state("Z", "up"), plus = reg.state("X", "plus");
    const ScalarExpr a = ScalarExpr::transform(up, plus), b = ScalarExpr::transform(plus, up);
    CHECK(a * b == b * a);
    const ScalarExpr ba = b * a;
    const auto& factors = ba.terms().begin()->first.factors;
    CHECK(std::is_sorted(factors.begin(), factors.end()));
  }

  TEST_CASE("zero coefficients are never stored") {
    const Registry reg = spin_registry();
    const ScalarExpr t = ScalarExpr::transform(reg.state("Z", "up"), reg.state("X", "minus"));
    CHECK((t - t).is_zero());
    CHECK((t - t).terms().empty());
    CHECK((t * ScalarExpr(0)).is_zero());
  }

  TEST_CASE("ring laws on random scalars") {
    const Registry reg = shaped_registry({2, 3, 2});
    const auto states = all_states(reg);
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
      const ScalarExpr a = random_scalar(states, rng), b = random_scalar(states, rng), c = random_scalar(states, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a + b).conjugate() == a.conjugate() + b.conjugate());
      CHECK((a * b).conjugate() == a.conjugate() * b.conjugate());
      CHECK(a - a == ScalarExpr());
    }
  }

  TEST_CASE("rendering of constants and sums") {
    const Registry reg = spin_registry();
    CHECK(render(reg, ScalarExpr()) == "0");
    CHECK(render(reg, ScalarExpr(ComplexRational{Rational(-1, 2)})) == "-1/2");
    const StateRef up = reg.state("Z", "up"), plus = reg.state("X", "plus");
    const ScalarExpr s = ScalarExpr::transform(up, plus) * ScalarExpr::transform(plus, up) - ScalarExpr(1);
    CHECK(render(reg, s) == "-1 + <Z:up|X:plus>*<X:plus|Z:up>");
  }
}
