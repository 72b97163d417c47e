#include "rb/spectrum.hpp"

namespace rb {

ComplexInterval ci(double re, double im) {
  return ComplexInterval{Interval{re, re}, Interval{im, im}};
}

IntervalMatrix exact_matrix(int rows, int cols, std::initializer_list<double> entries) {
  if (static_cast<int>(entries.size()) != rows * cols) throw Error("bad matrix literal");
  IntervalMatrix M(rows, cols);
  auto it = entries.begin();
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) M(r, c) = ci(*it++);
  return M;
}

IntervalMatrix sh_dg0(const Interval& mu_hat) {
  IntervalMatrix M = exact_matrix(4, 4,
      {0, 1, 0, 0,
       0, 0, 1, 0,
       0, 0, 0, 1,
       0, 0, -2, 0});
  M(3, 0) = ComplexInterval{-(Interval{1.0, 1.0} + mu_hat), Interval{0.0, 0.0}};
  return M;
}

IntervalMatrix make_S() {
  return exact_matrix(4, 4,
      {1, 0, 0, 0,
       0, 0, 1, 0,
       0, 2, 0, 1,
       0, 1, 0, 0});
}

IntervalMatrix make_Sinv() {
  return exact_matrix(4, 4,
      {1, 0, 0, 0,
       0, 0, 0, 1,
       0, 1, 0, 0,
       0, 0, 1, -2});
}

IntervalMatrix make_J() {
  return exact_matrix(4, 4,
      {0, 0, 1, 0,
       0, 0, 0, 1,
       -1, 0, 0, 0,
       0, -1, 0, 0});
}

Spectrum compute_spectrum(const Interval& mu_hat) {
  if (!(mu_hat.lo > 0.0)) throw Error("spectrum requires a positive parameter");
  Spectrum sp;
  sp.mu_hat = mu_hat;
  sp.rho = sqrt(Interval{1.0, 1.0} + mu_hat);
  sp.sqrt_rho = sqrt(sp.rho);
  sp.theta = pi_interval() - atan(sqrt(mu_hat));
  Interval half = sp.theta * Interval{0.5, 0.5};
  sp.cos_half = cos(half);
  sp.sin_half = sin(half);
  sp.re_mu_u = sp.sqrt_rho * sp.cos_half;

  ComplexInterval u1{sp.sqrt_rho * sp.cos_half, sp.sqrt_rho * sp.sin_half};
  ComplexInterval u2 = conj(u1);
  ComplexInterval zero = ci(0.0);
  sp.mu = {zero - u1, zero - u2, u1, u2};

  sp.Vhat = IntervalMatrix(4, 4);
  for (int j = 0; j < 4; ++j) {
    ComplexInterval p = ci(1.0);
    for (int r = 0; r < 4; ++r) {
      sp.Vhat(r, j) = p;
      p = p * sp.mu[j];
    }
  }
  sp.Vhat_inv = verified_inverse(sp.Vhat);

  sp.S = make_S();
  sp.Sinv = make_Sinv();
  sp.J = make_J();
  sp.B_infty = sp.S * sh_dg0(mu_hat) * sp.Sinv;

  sp.Vcheck = sp.S * sp.Vhat;
  for (int j = 0; j < 4; ++j) {
    ComplexInterval musq = sp.mu[j] * sp.mu[j];
    for (int r = 0; r < 4; ++r) sp.Vcheck(r, j) = sp.Vcheck(r, j) / musq;
  }
  sp.Vcheck_inv = verified_inverse(sp.Vcheck);

  sp.K = mat_norm_spec(sp.Vcheck) * mat_norm_spec(sp.Vcheck_inv);

  sp.evec_norm = Interval{0.0, 0.0};
  for (int j = 0; j < 4; ++j) {
    Interval n = vec_norm_l2(take_cols(sp.Vcheck, {j}));
    sp.evec_norm = Interval{std::max(sp.evec_norm.lo, n.lo), std::max(sp.evec_norm.hi, n.hi)};
  }
  return sp;
}

}  // namespace rb
