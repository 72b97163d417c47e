#pragma once

// Exact reference data for the planar pulse system
//
//   v1' = v2,   v2' = v1 + 3 v1^2 + 2 v1^3,
//
// whose tail manifold is known in closed form: the pulse component is
// v1 = -s/(1+s) in the conjugated variable s, so every Taylor
// coefficient of the manifold, of its tangent frame, and of the
// resonant linear normal form is a small rational number.  This module
// recomputes all of them in exact rational arithmetic, proves the
// defining functional equations by coefficient substitution, and
// converts the results to the tightest representable intervals so that
// the validated pipeline can be compared against them
// coefficient-by-coefficient.

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "rb/interval.hpp"

namespace rb {

using Rational = boost::multiprecision::cpp_rational;
using RVec2 = std::array<Rational, 2>;
using RPoly2 = std::vector<RVec2>;  // one 2-vector of coefficients per grade

// Manifold coefficients P_k, k = 0..order, in the shifted coordinates
// (rest state at the origin).
RPoly2 exact_manifold(int order);

// Tangent frame column: derivative of the manifold series, grades 0..order.
RPoly2 exact_tangent_frame(int order);

// Coefficients of f'(v1(s)) - f'(0) along the pulse, grades 0..order.
std::vector<Rational> exact_q_series(int order);

struct ExactBundle {
  RPoly2 wu;   // normal frame column, grades 0..order
  Rational a;  // resonant normal-form coefficient
};

// Solves the frame recurrence exactly.  The grade-2 step is singular; its
// solvability condition determines `a` and leaves a one-parameter family
// wu + gauge * s^2 * ws.  gauge = 0 reproduces the convention of the
// validated solver (zero stable frame component in the resonant slot).
ExactBundle exact_unstable_bundle(int order, const Rational& gauge);

// Substitution proofs, exact through the stated truncation order.
bool exact_invariance_holds(const RPoly2& P);
bool exact_bundle_conjugacy_holds(const RPoly2& P, const RPoly2& ws,
                                  const RPoly2& wu, const Rational& a);
bool exact_closed_forms_hold(const RPoly2& P, const std::vector<Rational>& q);

// Tightest interval containing the rational: a point when exactly
// representable, otherwise the two neighbouring doubles.
Interval enclose(const Rational& r);

struct OracleReport {
  int order = 0;
  bool exact_invariance = false;
  bool exact_conjugacy = false;
  bool exact_closed_forms = false;
  bool resonance_table_ok = false;
  bool normal_form_values_ok = false;  // a == -12 and early-grade spot values
  bool deviations_contain_zero = false;
  double max_dev_width = 0.0;
  double elapsed_seconds = 0.0;
  bool ok() const {
    return exact_invariance && exact_conjugacy && exact_closed_forms &&
           resonance_table_ok && normal_form_values_ok &&
           deviations_contain_zero;
  }
};

// Runs the validated pipeline on the pulse system and compares every
// manifold, frame, and normal-form coefficient against the exact values.
OracleReport run_oracle(int order);

}  // namespace rb
