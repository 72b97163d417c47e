#include <doctest.h>

#include "rb/interval.hpp"
#include "test_util.hpp"

using namespace rb;

TEST_SUITE("interval") {
  TEST_CASE("construction and accessors") {
    Interval a(1.0, 3.0);
    CHECK(a.contains(2.0));
    CHECK(!a.contains(3.5));
    CHECK(a.mid() == doctest::Approx(2.0));
    CHECK(a.mag() == 3.0);
    CHECK(a.mig() == 1.0);
    CHECK(Interval(-2.0, 1.0).mig() == 0.0);
    CHECK(Interval(-2.0, 1.0).mag() == 2.0);
    CHECK_THROWS_AS(Interval(2.0, 1.0), Error);
    CHECK_THROWS_AS(Interval(std::numeric_limits<double>::infinity()), Error);
  }

  TEST_CASE("division by an interval containing zero reports a singular divisor") {
    CHECK_THROWS_WITH_AS(Interval(1.0) / Interval(-1.0, 1.0), "singular divisor", Error);
    CHECK_THROWS_WITH_AS(ComplexInterval(1.0) / ComplexInterval(0.0), "singular divisor",
                         Error);
  }

  TEST_CASE("1/3 is enclosed within two ulps") {
    Interval q = Interval(1.0) / Interval(3.0);
    rbtest::Rational third(1, 3);
    CHECK(rbtest::rat_in(third, q));
    CHECK(q.width() <= 2.0 * std::ldexp(1.0, -54));  // 2 ulp at 1/3
  }

  TEST_CASE("transcendental enclosures contain 40-digit references and stay tight") {
    auto tight = [](const Interval& iv, double lo_ref, double hi_ref) {
      CHECK(iv.lo <= lo_ref);
      CHECK(iv.hi >= hi_ref);
      CHECK(iv.width() <= 4.0 * std::ldexp(std::fabs(hi_ref), -52));
    };
    // References truncated/rounded from 40-digit evaluations.
    tight(exp(Interval(1.0)), 2.718281828459045, 2.7182818284590456);
    tight(pi_interval(), 3.141592653589793, 3.1415926535897936);
    tight(atan(Interval(1.0)), 0.7853981633974483, 0.7853981633974484);
    tight(sin(Interval(1.0)), 0.8414709848078965, 0.8414709848078966);
    tight(cos(Interval(1.0)), 0.5403023058681397, 0.5403023058681398);
    // pi/4 relation ties the two transcendental families together.
    Interval rel = atan(Interval(1.0)) * Interval(4.0) - pi_interval();
    CHECK(rel.contains_zero());
  }

  TEST_CASE("monotone hull, intersection and comparison helpers") {
    Interval a(0.0, 1.0), b(2.0, 3.0), out;
    CHECK(hull(a, b).contains(a));
    CHECK(hull(a, b).contains(b));
    CHECK(!try_intersect(a, b, out));
    CHECK(try_intersect(Interval(0.5, 2.5), b, out));
    CHECK(out.lo == 2.0);
    CHECK(certainly_less(a, b));
    CHECK(!certainly_less(a, Interval(0.5, 3.0)));
    CHECK(overlap(a, Interval(1.0, 2.0)));
    CHECK(!overlap(a, Interval(1.5, 2.0)));
  }

  TEST_CASE("complex polar and exponential enclosures") {
    ComplexInterval z = from_polar(Interval(2.0), pi_interval() / Interval(2.0));
    CHECK(z.re.contains_zero());
    CHECK(z.im.contains(2.0));
    ComplexInterval w = exp(ComplexInterval(Interval(0.0), pi_interval()));
    CHECK(w.re.contains(-1.0));
    CHECK(w.im.contains_zero());
  }

  TEST_CASE("randomized rational containment: scalar operations") {
    auto st = rbtest::run_scalar_containment(20240801u, 5000);
    CHECK(st.checks >= 30000);
    CHECK(st.violations == 0);
  }

  TEST_CASE("randomized rational containment: complex operations") {
    auto st = rbtest::run_complex_containment(20240802u, 4000);
    CHECK(st.checks >= 20000);
    CHECK(st.violations == 0);
  }
}
