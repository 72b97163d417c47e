#pragma once

// Certified lengths for the two conjugacy windows.
//
// On the tail side, the linearized flow along the manifold converges to
// the constant-coefficient system at rate Re(mu_u); once
// tau(L) = (K K_B / C_B) e^{-C_B L} is small enough, a roughness
// argument conjugates the window [L, infinity) dynamics to the
// asymptotic ones.  find_L_minus walks a fixed grid and returns the
// first L where tau < 1 and tau / (1 - tau) < 1 / (8 rho^{3/2}), both
// strict.
//
// On the matching side, a transversality inequality between the stable
// and unstable data at the section x = L certifies the intersection.
// All matrix norms here are spectral-norm enclosures and the smallest
// singular value is bounded from below through the 2x2 Hermitian
// closed form.

#include "rb/manifold.hpp"
#include "rb/spectrum.hpp"

namespace rb {

struct DecayConstants {
  Interval C_B;     // decay rate, Re(mu_u)
  Interval K_B;     // nonlinearity strength along the manifold
  Interval K;       // dichotomy constant of the asymptotic system
  Interval P_norm;  // validated manifold norm entering K_B
};

// K_B = ||P|| (2|c2| + 6|c3| ||P||) with ||P|| the sum of the component
// series norms plus the validated tail radius.
DecayConstants decay_constants(const Spectrum& sp, const ManifoldParam& man);

Interval tau_at(const DecayConstants& dc, double L);

struct WindowResult {
  double L = 0.0;
  bool found = false;
  Interval tau;
  Interval ratio;      // tau / (1 - tau)
  Interval threshold;  // 1 / (8 rho^{3/2})
  Interval sigma_radius;  // e^{-C_B L}, parameter radius covered by the window
};

WindowResult find_L_minus(const DecayConstants& dc, const Spectrum& sp,
                          double L_max = 200.0);

// L-independent matching data built from slices of the rescaled
// eigenbasis: row pairs {1,2}, {3,4} and {1,4} of the stable and
// unstable column blocks.
struct LPlusData {
  IntervalMatrix M1;  // (Vs_34)^* Vu_12 - (Vu_12)^* Vs_34, skew-Hermitian
  IntervalMatrix M2;  // (Vs_14)^{-1} Vu_14
  Interval sigma_min;  // smallest singular value of M2^* M1, from below
  Interval nM1, nM2;
  Interval nVs12, nVs34;
  Interval nVs14_inv, nVu14_inv;
};

LPlusData lplus_matrices(const Spectrum& sp);

struct LPlusReport {
  double L = 0.0;
  bool ok = false;
  Interval tau, eps0, eps_beta, eps_gamma, CM3, CM4;
  Interval lhs;  // sigma_min
  Interval rhs;  // perturbation budget the inequality must dominate
};

// Checks the transversality inequality at window length L for the given
// asymptotic coordinates (beta_t along the tangent pair, gamma_t along
// the normal pair, two complex entries each).  Throws "L too small" when
// tau >= 1, "increase L" when the eps0 precondition fails, and
// "gamma_tilde must be nonzero" when the normal coordinates cannot be
// bounded away from zero.
LPlusReport check_L_plus(const Spectrum& sp, const DecayConstants& dc,
                         const LPlusData& lp, double L,
                         const std::vector<ComplexInterval>& beta_t,
                         const std::vector<ComplexInterval>& gamma_t);

// Coordinates of a section state against the transported frame: solves
// (S W(sigma0)) c = u for c = (beta_1, beta_2, gamma_1, gamma_2).
std::vector<ComplexInterval> frame_coordinates(const Spectrum& sp,
                                               const MultiSeries& W,
                                               const std::vector<ComplexInterval>& sigma0,
                                               const std::vector<ComplexInterval>& u,
                                               const Interval& delta);

}  // namespace rb
