#pragma once

// Validated Taylor parameterizations of stable/unstable manifolds of a
// polynomial vector field whose nonlinearity sits in the last component:
//
//   u' = DG(0) u + (c2 u1^2 + c3 u1^3) e_n.
//
// The parameterization P conjugates the diagonal flow on the chosen
// eigendirections to the flow on the manifold:  DP(sigma) Omega sigma =
// G(P(sigma)), with Omega = diag over the direction eigenvalues.  Orders
// >= 2 are produced by the homological recursion
//
//   (alpha.mu I - DG(0)) P_alpha = R_alpha e_n,
//
// solved per grade with a verified enclosure (the matrix has eigenvalues
// alpha.mu - mu_i, so solvability is exactly the absence of manifold
// resonances).  Divisors
// are certified nonzero exactly (integer lattice combinations over an
// R-independent direction basis) up to a grade past which the real parts
// dominate, with an interval fallback.
//
// Validation of the truncation error follows the radii-polynomial route:
// a tail bound K_N for the solved linear step plus Y/Z estimates for the
// defect and the Lipschitz constants give a polynomial whose negativity
// at radius r certifies a true manifold within distance r of the
// truncated one in the weighted l1 norm.

#include <vector>

#include "rb/series.hpp"
#include "rb/spectrum.hpp"

namespace rb {

struct FieldSpec {
  int n = 4;        // ambient dimension
  Interval c2, c3;  // quadratic and cubic coefficients on u1 in row n
  IntervalMatrix dg0;
};

FieldSpec field_swift_hohenberg(const Interval& mu_hat, const Interval& nu_hat);
// Shifted bistable system v1' = v2, v2' = v1 + 3 v1^2 + 2 v1^3 (the
// translation of the scalar bistable equation to its nonzero rest state).
FieldSpec field_bistable();

enum class Side { stable, unstable };

struct EigenFrame {
  int n = 0;  // ambient dimension
  int d = 0;  // manifold dimension = number of chosen directions
  std::vector<ComplexInterval> mu_all;  // all n eigenvalues, basis order
  std::vector<int> dirs;                // indices of the manifold directions
  IntervalMatrix V, Vinv;
  // lattice[i] = integer coordinates of mu_all[i] over the direction
  // eigenvalues, when such a representation exists (empty otherwise).
  std::vector<std::vector<int>> lattice;
};

EigenFrame sh_frame(const Spectrum& sp, Side side);
EigenFrame bistable_frame();

// mu_i - alpha . mu_dirs.
ComplexInterval manifold_divisor(const EigenFrame& f, const std::vector<int>& alpha, int i);

// Smallest grade beyond which |Re(alpha.mu_dirs)| certifiably exceeds
// max_i |Re mu_i| + slack, so divisors cannot vanish.  numerator_eigs is
// how many times the largest eigenvalue modulus can appear (1 for the
// manifold divisors, 2 for the bundle divisors).
int resonance_scan_cutoff(const EigenFrame& f, int numerator_eigs);

// Certifies mu_i - alpha.mu_dirs != 0 for every i and every 2 <= |alpha|
// <= cutoff; throws on a resonance or when neither the exact lattice
// route nor interval evaluation decides.
void check_manifold_resonance(const EigenFrame& f);

struct RadiiBounds {
  Interval KN;        // tail solve constant
  Interval Y0;        // defect bound
  Interval Z1;        // linear Lipschitz bound, must stay below 1
  Interval Z2_const;  // Z2(r) = Z2_const + Z2_lin * r
  Interval Z2_lin;
  double r0 = 0.0;    // first certified radius on the search grid
  bool validated = false;
};

struct ManifoldParam {
  FieldSpec field;
  EigenFrame frame;
  int order = 0;
  std::vector<ComplexInterval> scalings;  // first-order coefficients on V columns
  MultiSeries P;  // n x 1 blocks in d variables
  RadiiBounds bounds;
};

ManifoldParam solve_manifold_coeffs(const FieldSpec& field, const EigenFrame& frame,
                                    int order,
                                    const std::vector<ComplexInterval>& scalings);

// Multiplier z with z * V column dirs[k] of Euclidean norm s.
ComplexInterval scale_for_norm(const EigenFrame& f, int k, const Interval& s);

// Tail constant for the quartet spectrum: every divisor with |alpha| > N
// has modulus at least N * Re(mu_u), so the solved step is bounded by
// ||V||_1 max_i |(V^{-1})_{i,n}| / (N Re(mu_u)).
Interval manifold_KN(const Spectrum& sp, int N);

// Y/Z estimates for the radii polynomial p(r) = Z2(r) r^2 + (Z1-1) r + Y0.
RadiiBounds manifold_radii_bounds(const ManifoldParam& man, const Spectrum& sp);

// Fills r0 with the smallest radius on a 40-point geometric grid in
// [1e-18, 1e-2] where p(r) < 0 strictly; throws if Z1 >= 1 or no grid
// point certifies.
void find_radius(RadiiBounds& rb);

// Coefficient blocks of DP(sigma) Omega sigma - G(P(sigma)); every block
// through the stored order must contain zero.
MultiSeries invariance_residual(const FieldSpec& field, const ManifoldParam& man);

// Requires the coefficients to satisfy P_(m,n) = conj(P_(n,m)) as
// enclosures, which makes P(s+it, s-it) real.
void check_conjugate_symmetry(const MultiSeries& P);

// Midpoint image of the real slice at sigma = (s+it, s-it); components
// beyond the stored blocks are not extrapolated.
std::vector<double> real_trace(const MultiSeries& P, double s, double t,
                               const Interval& delta);

}  // namespace rb
