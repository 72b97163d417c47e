#include <doctest.h>

#include <chrono>

#include "rb/oracle_bistable.hpp"

using namespace rb;

TEST_SUITE("oracle") {
  TEST_CASE("closed-form coefficients at low order") {
    RPoly2 P = exact_manifold(6);
    // P_k = ((-1)^k, (-1)^{k-1} k) for k >= 1, rest state at grade 0.
    CHECK(P[0][0] == 0);
    CHECK(P[0][1] == 0);
    for (int k = 1; k <= 6; ++k) {
      CHECK(P[k][0] == (k % 2 ? -1 : 1));
      CHECK(P[k][1] == (k % 2 ? 1 : -1) * Rational(k));
    }
    RPoly2 ws = exact_tangent_frame(5);
    for (int k = 0; k <= 5; ++k) {
      CHECK(ws[k][0] == P[k + 1][0] * Rational(k + 1));
      CHECK(ws[k][1] == P[k + 1][1] * Rational(k + 1));
    }
    ExactBundle eb = exact_unstable_bundle(4, Rational(0));
    CHECK(eb.a == -12);
    // Grade 0 is the eigenvector; the next grades are the classic values.
    CHECK(eb.wu[0] == RVec2{Rational(1), Rational(1)});
    CHECK(eb.wu[1] == RVec2{Rational(6), Rational(0)});
    CHECK(eb.wu[2] == RVec2{Rational(6), Rational(6)});
    CHECK(eb.wu[3] == RVec2{Rational(-26), Rational(28)});
  }

  TEST_CASE("substitution proofs hold exactly at high order") {
    const int order = 40;
    RPoly2 P = exact_manifold(order);
    std::vector<Rational> q = exact_q_series(order);
    CHECK(exact_invariance_holds(P));
    CHECK(exact_closed_forms_hold(P, q));
    RPoly2 ws = exact_tangent_frame(order);
    ExactBundle eb = exact_unstable_bundle(order, Rational(0));
    CHECK(exact_bundle_conjugacy_holds(P, ws, eb.wu, eb.a));
  }

  TEST_CASE("gauge freedom: the frame family solves the same equations") {
    const int order = 15;
    RPoly2 P = exact_manifold(order);
    RPoly2 ws = exact_tangent_frame(order);
    for (int g : {1, -3, 7}) {
      ExactBundle eb = exact_unstable_bundle(order, Rational(g));
      CHECK(eb.a == -12);
      CHECK(exact_bundle_conjugacy_holds(P, ws, eb.wu, eb.a));
    }
  }

  TEST_CASE("substitution proofs reject corrupted data") {
    const int order = 12;
    RPoly2 P = exact_manifold(order);
    std::vector<Rational> q = exact_q_series(order);
    RPoly2 ws = exact_tangent_frame(order);
    ExactBundle eb = exact_unstable_bundle(order, Rational(0));

    RPoly2 badP = P;
    badP[5][1] += Rational(1, 1000000);
    CHECK(!exact_invariance_holds(badP));
    // The closed-form identities constrain the pulse component.
    RPoly2 badP0 = P;
    badP0[5][0] += Rational(1, 1000000);
    CHECK(!exact_closed_forms_hold(badP0, q));
    CHECK(!exact_invariance_holds(badP0));

    std::vector<Rational> badq = q;
    badq[3] += Rational(1, 7);
    CHECK(!exact_closed_forms_hold(P, badq));

    // The sign of the normal-form coefficient is decisive.
    CHECK(!exact_bundle_conjugacy_holds(P, ws, eb.wu, -eb.a));
    RPoly2 badwu = eb.wu;
    badwu[2][0] += Rational(1);
    CHECK(!exact_bundle_conjugacy_holds(P, ws, badwu, eb.a));
  }

  TEST_CASE("rational enclosures are tight and correctly rounded") {
    Interval third = enclose(Rational(1, 3));
    CHECK(third.lo < third.hi);
    CHECK(third.hi - third.lo <= 2e-16);
    CHECK(Rational(third.lo) < Rational(1, 3));
    CHECK(Rational(1, 3) < Rational(third.hi));
    Interval exact = enclose(Rational(-26));
    CHECK(exact.lo == -26.0);
    CHECK(exact.hi == -26.0);
    Interval half = enclose(Rational(1, 2));
    CHECK(half.lo == 0.5);
    CHECK(half.hi == 0.5);
  }

  TEST_CASE("pipeline agreement at order 10 is exact-width and fast") {
    auto t0 = std::chrono::steady_clock::now();
    OracleReport r = run_oracle(10);
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    CHECK(r.ok());
    CHECK(r.order == 10);
    CHECK(r.exact_invariance);
    CHECK(r.exact_conjugacy);
    CHECK(r.exact_closed_forms);
    CHECK(r.resonance_table_ok);
    CHECK(r.normal_form_values_ok);
    CHECK(r.deviations_contain_zero);
    CHECK(r.max_dev_width <= 1e-12);
    CHECK(wall < 1.0);
  }

  TEST_CASE("pipeline agreement persists at order 30") {
    OracleReport r = run_oracle(30);
    CHECK(r.ok());
    // Coefficients grow polynomially with the grade here, so the absolute
    // enclosure widths are allowed to grow with them.
    CHECK(r.max_dev_width <= 1e-9);
  }
}
