#include "rb/conjwindow.hpp"

#include <cmath>
#include <cstdio>

#include "rb/ivmatrix.hpp"
#include "rb/series.hpp"

namespace rb {

namespace {

Interval exp_neg_CBL(const DecayConstants& dc, double L) {
  return exp(dc.C_B * Interval(-L));
}

}  // namespace

DecayConstants decay_constants(const Spectrum& sp, const ManifoldParam& man) {
  if (!man.bounds.validated)
    throw Error("manifold radius must be validated before the decay constants");
  const Interval delta(1.0);
  Interval pn(0.0);
  for (int j = 0; j < man.field.n; ++j)
    pn = pn + norm_l1(component(man.P, j), delta, 0, man.order);
  pn = pn + man.bounds.r0;
  const Interval a2 = abs(man.field.c2), a3 = abs(man.field.c3);
  DecayConstants dc;
  dc.P_norm = pn;
  dc.K_B = pn * (a2 * 2.0 + a3 * 6.0 * pn);
  dc.C_B = sp.re_mu_u;
  dc.K = sp.K;
  return dc;
}

Interval tau_at(const DecayConstants& dc, double L) {
  return (dc.K * dc.K_B / dc.C_B) * exp_neg_CBL(dc, L);
}

WindowResult find_L_minus(const DecayConstants& dc, const Spectrum& sp,
                          double L_max) {
  WindowResult res;
  res.threshold = Interval(1.0) / (sqrt(sp.rho) * sp.rho * 8.0);
  for (int k = 1;; ++k) {
    const double L = 0.1 * k;
    if (L > L_max) break;
    const Interval tau = tau_at(dc, L);
    if (!(tau.hi < 1.0)) continue;
    const Interval ratio = tau / (Interval(1.0) - tau);
    if (!certainly_less(ratio, res.threshold)) continue;
    res.L = L;
    res.found = true;
    res.tau = tau;
    res.ratio = ratio;
    res.sigma_radius = exp_neg_CBL(dc, L);
    return res;
  }
  return res;
}

LPlusData lplus_matrices(const Spectrum& sp) {
  const IntervalMatrix& Vc = sp.Vcheck;
  const std::vector<int> r12{0, 1}, r34{2, 3}, r14{0, 3}, cs{0, 1}, cu{2, 3};
  const IntervalMatrix Vs12 = take_cols(take_rows(Vc, r12), cs);
  const IntervalMatrix Vs34 = take_cols(take_rows(Vc, r34), cs);
  const IntervalMatrix Vs14 = take_cols(take_rows(Vc, r14), cs);
  const IntervalMatrix Vu12 = take_cols(take_rows(Vc, r12), cu);
  const IntervalMatrix Vu14 = take_cols(take_rows(Vc, r14), cu);

  LPlusData lp;
  // Constant part of the symplectic pairing between the asymptotic stable
  // and unstable frames.  The two sides share their top two rows and have
  // opposite bottom rows, so expanding (Vs34)*Vu12 - (Vs12)*Vu34 leaves the
  // Hermitian combination below; the skew combination with a minus sign is
  // identically zero for this eigenvector structure and would make the
  // separation constant vacuous.
  lp.M1 = adjoint(Vs34) * Vu12 + adjoint(Vu12) * Vs34;
  lp.M2 = verified_solve(Vs14, Vu14);
  const IntervalMatrix T = adjoint(lp.M2) * lp.M1;
  const IntervalMatrix G = adjoint(T) * T;
  Interval lam = eig2_hermitian_min(G);
  if (lam.lo < 0.0) lam.lo = 0.0;
  if (lam.hi < 0.0) lam.hi = 0.0;
  lp.sigma_min = sqrt(lam);
  lp.nM1 = mat_norm_spec(lp.M1);
  lp.nM2 = mat_norm_spec(lp.M2);
  lp.nVs12 = mat_norm_spec(Vs12);
  lp.nVs34 = mat_norm_spec(Vs34);
  lp.nVs14_inv = mat_norm_spec(verified_inverse(Vs14));
  lp.nVu14_inv = mat_norm_spec(verified_inverse(Vu14));
  return lp;
}

LPlusReport check_L_plus(const Spectrum& sp, const DecayConstants& dc,
                         const LPlusData& lp, double L,
                         const std::vector<ComplexInterval>& beta_t,
                         const std::vector<ComplexInterval>& gamma_t) {
  if (beta_t.size() != 2 || gamma_t.size() != 2)
    throw Error("frame coordinates must have two entries per pair");
  LPlusReport rep;
  rep.L = L;
  rep.tau = tau_at(dc, L);
  if (!(rep.tau.hi < 1.0)) throw Error("L too small");
  rep.eps0 = (rep.tau / (Interval(1.0) - rep.tau)) * sp.evec_norm;

  const Interval eps0_cond = rep.eps0 * lp.nVs14_inv;
  if (!(eps0_cond.hi < 1.0)) throw Error("increase L");

  rep.CM4 = lp.nM2 *
            (lp.nVu14_inv +
             lp.nVs14_inv * (Interval(1.0) + rep.eps0 * lp.nVu14_inv) /
                 (Interval(1.0) - eps0_cond));
  rep.CM3 =
      (lp.nVs34 + sqrt(Interval(2.0)) * 2.0 * lp.nVs12 + rep.eps0) * 2.0;

  const Interval decay = exp_neg_CBL(dc, L);
  Interval b2 = sqrt(abs2(beta_t[0]) + abs2(beta_t[1]));
  Interval g2 = sqrt(abs2(gamma_t[0]) + abs2(gamma_t[1]));
  rep.eps_beta = decay * b2;
  if (!(g2.lo > 0.0)) throw Error("gamma_tilde must be nonzero");
  rep.eps_gamma = decay / g2;

  rep.lhs = lp.sigma_min;
  rep.rhs = rep.eps0 * rep.CM3 * lp.nM2 +
            (rep.eps0 * rep.CM3 + lp.nM1) *
                (rep.eps0 * rep.CM4 + rep.eps_beta * rep.eps_gamma);
  rep.ok = rep.rhs.hi < rep.lhs.lo;
  return rep;
}

std::vector<ComplexInterval> frame_coordinates(
    const Spectrum& sp, const MultiSeries& W,
    const std::vector<ComplexInterval>& sigma0,
    const std::vector<ComplexInterval>& u, const Interval& delta) {
  if (W.crows != 4 || W.ccols != 4)
    throw Error("frame coordinates need a 4x4 transition series");
  if (u.size() != 4) throw Error("frame coordinates need a 4-vector state");
  const std::vector<ComplexInterval> w0 = eval(W, sigma0, delta);
  IntervalMatrix W0(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) W0(r, c) = w0[static_cast<size_t>(r) * 4 + c];
  const IntervalMatrix SW = sp.S * W0;
  IntervalMatrix rhs(4, 1);
  for (int i = 0; i < 4; ++i) rhs(i, 0) = u[i];
  const IntervalMatrix c = verified_solve(SW, rhs);
  return {c(0, 0), c(1, 0), c(2, 0), c(3, 0)};
}

}  // namespace rb
