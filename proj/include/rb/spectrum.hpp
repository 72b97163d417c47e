#pragma once

// Linearization data of the Swift-Hohenberg spatial system at the origin.
//
// The characteristic roots of the fourth order linearization solve
// mu^4 + 2 mu^2 + (1 + a) = 0 for parameter a > 0, giving a complex
// quartet +-sqrt(rho) e^{+-i theta/2} with rho = sqrt(1 + a) and
// theta = pi - atan(sqrt(a)).  Everything downstream (manifold solves,
// bundle divisors, decay windows) is phrased in terms of this quartet,
// the eigenbasis with columns (1, mu, mu^2, mu^3), and a rescaled basis
// adapted to the symplectic change of variables.

#include <vector>

#include "rb/interval.hpp"
#include "rb/ivmatrix.hpp"

namespace rb {

struct Spectrum {
  Interval mu_hat;     // linear coefficient parameter of the nonlinearity
  Interval rho;        // sqrt(1 + mu_hat) = |mu|^2 for every root
  Interval theta;      // argument of the squared unstable root
  Interval sqrt_rho;
  Interval cos_half;   // cos(theta / 2)
  Interval sin_half;
  Interval re_mu_u;    // sqrt_rho * cos_half, the spectral gap to the axis

  // Root order: stable pair first, then unstable; conjugates adjacent.
  std::vector<ComplexInterval> mu;  // { s1, s2 = conj s1, u1 = -s1, u2 = -s2 }

  IntervalMatrix Vhat;        // columns (1, mu_j, mu_j^2, mu_j^3)
  IntervalMatrix Vhat_inv;    // verified enclosure of the inverse
  IntervalMatrix Vcheck;      // S * Vhat * diag(mu_j^{-2})
  IntervalMatrix Vcheck_inv;
  IntervalMatrix S, Sinv;     // symplectic-coordinates change of variables
  IntervalMatrix J;           // standard symplectic form, [[0, I], [-I, 0]]
  IntervalMatrix B_infty;     // S * DG(0) * S^{-1}

  Interval K;          // ||Vcheck|| * ||Vcheck^{-1}||, spectral norms
  Interval evec_norm;  // max_j ||Vcheck_j||_2
};

Spectrum compute_spectrum(const Interval& mu_hat);

// Jacobian of the first order field at the origin; the last row carries
// (-(1 + mu_hat), 0, -2, 0).
IntervalMatrix sh_dg0(const Interval& mu_hat);

IntervalMatrix make_S();
IntervalMatrix make_Sinv();
IntervalMatrix make_J();

// Convenience exact-value builders.
ComplexInterval ci(double re, double im = 0.0);
IntervalMatrix exact_matrix(int rows, int cols, std::initializer_list<double> entries);

}  // namespace rb
