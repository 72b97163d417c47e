#pragma once

// Validated parameterization of the invariant frame bundle over a solved
// manifold.  The frame W (an n x n series over the manifold variables)
// conjugates the linearized flow along the manifold to a polynomial
// normal form A:
//
//   DG(P(sigma)) W(sigma) = DW(sigma) Omega sigma + W(sigma) A(sigma),
//
// A(0) = diag(mu) and the only other entries of A are the resonant
// monomials a^{i,j} sigma^beta with beta.mu + mu_j - mu_i = 0.  Writing
// W = V Wtilde and extracting the sigma^alpha coefficient yields the
// homological equations
//
//   (alpha.mu + mu_j - mu_i) wtilde^{i,j}_alpha + a^{i,j}_alpha
//       = stilde^{i,j}_alpha,
//
// solved grade by grade: off resonance a = 0 and wtilde = stilde / div,
// on resonance wtilde = 0 and a = stilde.  Divisors are classified
// exactly through the integer lattice of the eigenvalue quartet up to a
// cutoff grade, beyond which real parts certifiably dominate.
//
// Tail validation bounds a true frame within r of the truncation in the
// weighted norm max_j sum_i ||b^{i,j}||: per column, Y collects the
// truncation defect (polynomial tail, interpolation error of DG(P)
// against the true manifold, and the resonant secular terms) and Z the
// Lipschitz constants of the same three mechanisms.

#include "rb/manifold.hpp"
#include "rb/series.hpp"
#include "rb/spectrum.hpp"

namespace rb {

struct ResonanceTable {
  int n = 0;
  int d = 0;
  int cutoff = 0;  // grades above cutoff certified nonresonant
  // res[i][j] lists every beta with 1 <= |beta| <= cutoff that resonates.
  std::vector<std::vector<std::vector<std::vector<int>>>> res;

  bool is_resonant(int i, int j, const std::vector<int>& beta) const;
  int total() const;
  int max_beta_grade() const;
};

// alpha.mu_dirs + mu_j - mu_i.
ComplexInterval bundle_divisor(const EigenFrame& f, const std::vector<int>& alpha,
                               int i, int j);

ResonanceTable bundle_resonance_sets(const EigenFrame& f);

struct ResonanceEntry {
  int i = 0, j = 0;
  std::vector<int> beta;
  ComplexInterval a;
};

struct BundleBounds {
  std::vector<Interval> KNj;              // per-column tail constants
  std::vector<Interval> Ya, Yb, Yc;       // defect pieces per column
  std::vector<Interval> Za, Zb, Zc;       // Lipschitz pieces per column
  Interval Y0, Z;                         // column maxima
  double r0 = 0.0;
  bool validated = false;
};

struct BundleFrame {
  int order = 0;
  MultiSeries Wtilde;  // n x n blocks, grade 0 = identity
  MultiSeries W;       // V * Wtilde
  MultiSeries A;       // normal form, grade 0 = diag(mu)
  std::vector<ResonanceEntry> entries;
  ResonanceTable table;
  BundleBounds bounds;
};

// DG along the truncated manifold: constant block DG(0) plus the entry
// (n, 1) carrying 2 c2 p1 + 3 c3 p1^2; exact polynomial of degree 2N.
MultiSeries dg_series(const FieldSpec& field, const MultiSeries& P, int order);

BundleFrame solve_bundle_coeffs(const FieldSpec& field, const ManifoldParam& man);

// Coefficients of DG(P) W - DW Omega sigma - W A through the stored
// order; every block must contain zero.
MultiSeries conjugacy_residual(const FieldSpec& field, const ManifoldParam& man,
                               const BundleFrame& bf);

// Per-column tail constant: 1 / ((N+1) Re mu_u) for the tangent-side
// columns and 1 / ((N-1) Re mu_u) for the normal ones.  The normal-side
// divisor alpha.mu + mu_j - mu_i attains modulus exactly (N-1) Re mu_u
// within the quartet lattice (imaginary parts cancel when the entries of
// alpha differ by 2), so 1 / (N Re mu_u) would not be an upper bound
// there.
Interval bundle_KN_col(const Spectrum& sp, int N, bool tangent_col);

// Fills bf.bounds.  Requires a validated manifold radius (the DG
// interpolation error depends on it) and the quartet spectrum.
void bundle_validate(const FieldSpec& field, const ManifoldParam& man,
                     BundleFrame& bf, const Spectrum& sp);

// Fundamental solution of v' = A(sigma0 e^{mu dirs (x - x0)}) v at
// displacement dx: column j is e^{mu_j dx} e_j plus the secular terms
// a^{i,j} dx e^{mu_i dx} sigma0^beta e_i of its resonant entries.  Valid
// only when no resonant source column is also a target row (no chained
// secular growth); throws otherwise.
IntervalMatrix normal_form_fundamental(const BundleFrame& bf, const EigenFrame& f,
                                       const std::vector<ComplexInterval>& sigma0,
                                       const Interval& dx);

}  // namespace rb
