#include "rb/manifold.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace rb {

FieldSpec field_swift_hohenberg(const Interval& mu_hat, const Interval& nu_hat) {
  FieldSpec f;
  f.n = 4;
  f.c2 = nu_hat;
  f.c3 = Interval{-1.0, -1.0};
  f.dg0 = sh_dg0(mu_hat);
  return f;
}

FieldSpec field_bistable() {
  FieldSpec f;
  f.n = 2;
  f.c2 = Interval{3.0, 3.0};
  f.c3 = Interval{2.0, 2.0};
  f.dg0 = exact_matrix(2, 2, {0, 1, 1, 0});
  return f;
}

EigenFrame sh_frame(const Spectrum& sp, Side side) {
  EigenFrame f;
  f.n = 4;
  f.d = 2;
  f.mu_all = sp.mu;
  f.V = sp.Vhat;
  f.Vinv = sp.Vhat_inv;
  if (side == Side::stable) {
    f.dirs = {0, 1};
    f.lattice = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  } else {
    f.dirs = {2, 3};
    f.lattice = {{-1, 0}, {0, -1}, {1, 0}, {0, 1}};
  }
  return f;
}

EigenFrame bistable_frame() {
  EigenFrame f;
  f.n = 2;
  f.d = 1;
  f.mu_all = {ci(-1.0), ci(1.0)};
  f.dirs = {0};
  f.lattice = {{1}, {-1}};
  // Stable eigenvector oriented along the pulse tangent so the frame agrees
  // with the derivative of the closed-form parameterization without rescaling.
  f.V = exact_matrix(2, 2, {-1, 1, 1, 1});
  f.Vinv = exact_matrix(2, 2, {-0.5, 0.5, 0.5, 0.5});
  return f;
}

ComplexInterval manifold_divisor(const EigenFrame& f, const std::vector<int>& alpha,
                                 int i) {
  ComplexInterval s = f.mu_all[i];
  for (int k = 0; k < f.d; ++k)
    s = s - static_cast<double>(alpha[k]) * f.mu_all[f.dirs[k]];
  return s;
}

int resonance_scan_cutoff(const EigenFrame& f, int numerator_eigs) {
  double max_re_hi = 0.0;
  for (int i = 0; i < f.n; ++i)
    max_re_hi = std::max(max_re_hi, abs(f.mu_all[i].re).hi);
  double dir_lo = HUGE_VAL, dir_hi = HUGE_VAL;
  for (int k : f.dirs) {
    Interval a = abs(f.mu_all[k].re);
    dir_lo = std::min(dir_lo, a.lo);
    dir_hi = std::min(dir_hi, a.hi);
  }
  if (!(dir_lo > 0.0)) throw Error("resonance undecidable, tighten intervals");
  return static_cast<int>(std::ceil((numerator_eigs * max_re_hi + dir_hi) / dir_lo));
}

namespace {

// The exact lattice route needs the direction eigenvalues independent
// over the reals, so that an integer combination vanishes only when all
// its coefficients do.
bool dirs_certified_independent(const EigenFrame& f) {
  if (f.d == 1) return abs(f.mu_all[f.dirs[0]]).lo > 0.0;
  if (f.d == 2) {
    const ComplexInterval& a = f.mu_all[f.dirs[0]];
    const ComplexInterval& b = f.mu_all[f.dirs[1]];
    Interval det = a.re * b.im - a.im * b.re;
    return !det.contains_zero();
  }
  return false;
}

std::string index_text(const std::vector<int>& alpha, int i) {
  std::string s = "alpha=(";
  for (size_t k = 0; k < alpha.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(alpha[k]);
  }
  s += "), eigenvalue " + std::to_string(i + 1);
  return s;
}

}  // namespace

void check_manifold_resonance(const EigenFrame& f) {
  int cutoff = resonance_scan_cutoff(f, 1);
  bool indep = dirs_certified_independent(f);
  for (int g = 2; g <= cutoff; ++g) {
    for_each_index_of_grade(f.d == 1 ? 1 : 2, g, [&](int a0, int a1) {
      std::vector<int> alpha = f.d == 1 ? std::vector<int>{a0} : std::vector<int>{a0, a1};
      for (int i = 0; i < f.n; ++i) {
        if (indep && static_cast<int>(f.lattice[i].size()) == f.d) {
          bool all_zero = true;
          for (int k = 0; k < f.d; ++k)
            if (f.lattice[i][k] != alpha[k]) { all_zero = false; break; }
          if (all_zero)
            throw Error("resonant divisor at " + index_text(alpha, i));
          continue;  // nonzero integer combination of independent values
        }
        if (manifold_divisor(f, alpha, i).contains_zero())
          throw Error("resonance undecidable, tighten intervals");
      }
    });
  }
}

ManifoldParam solve_manifold_coeffs(const FieldSpec& field, const EigenFrame& frame,
                                    int order,
                                    const std::vector<ComplexInterval>& scalings) {
  if (static_cast<int>(scalings.size()) != frame.d)
    throw Error("one scaling per manifold direction required");
  if (order < 1) throw Error("order must be at least 1");
  check_manifold_resonance(frame);

  ManifoldParam man;
  man.field = field;
  man.frame = frame;
  man.order = order;
  man.scalings = scalings;
  man.P = MultiSeries(frame.d, order, frame.n, 1);

  for (int k = 0; k < frame.d; ++k) {
    int i = k == 0 ? 1 : 0, j = k == 0 ? 0 : 1;
    if (frame.d == 1) { i = 1; j = 0; }
    for (int r = 0; r < frame.n; ++r)
      man.P.at(i, j, r, 0) = scalings[k] * frame.V(r, frame.dirs[k]);
  }

  MultiSeries p1(frame.d, order, 1, 1);
  MultiSeries pp(frame.d, order, 1, 1);
  MultiSeries ppp(frame.d, order, 1, 1);
  for_each_index_of_grade(frame.d, 1, [&](int i, int j) { p1.at(i, j) = man.P.at(i, j, 0, 0); });

  // Coefficient of a*b at (ai, aj) using only factor grades in [glo, ghi]
  // from a; grades below ai+aj are already final when this runs.
  auto prod_at = [&](const MultiSeries& A, const MultiSeries& B, int ai, int aj,
                     int glo, int ghi) {
    ComplexInterval acc{};
    for (int ga = glo; ga <= ghi; ++ga) {
      for_each_index_of_grade(frame.d, ga, [&](int bi, int bj) {
        if (bi <= ai && bj <= aj) acc += A.at(bi, bj) * B.at(ai - bi, aj - bj);
      });
    }
    return acc;
  };

  for (int g = 2; g <= order; ++g) {
    for_each_index_of_grade(frame.d, g, [&](int ai, int aj) {
      pp.at(ai, aj) = prod_at(p1, p1, ai, aj, 1, g - 1);
      ppp.at(ai, aj) = prod_at(pp, p1, ai, aj, 2, g - 1);
    });
    for_each_index_of_grade(frame.d, g, [&](int ai, int aj) {
      std::vector<int> alpha = frame.d == 1 ? std::vector<int>{ai} : std::vector<int>{ai, aj};
      ComplexInterval R = field.c2 * pp.at(ai, aj) + field.c3 * ppp.at(ai, aj);
      for (int i = 0; i < frame.n; ++i) {
        ComplexInterval div = manifold_divisor(frame, alpha, i);
        if (abs(div).lo < 1e-12)
          throw Error("singular divisor at " + index_text(alpha, i));
      }
      // Resolvent form of the order-|alpha| homological equation:
      // (alpha.mu I - DG(0)) P_alpha = R e_n.  Solving against the full
      // matrix keeps the enclosure widths proportional to the solution
      // instead of compounding the eigenbasis conditioning every grade.
      ComplexInterval am = static_cast<double>(alpha[0]) * frame.mu_all[frame.dirs[0]];
      if (frame.d == 2) am += static_cast<double>(alpha[1]) * frame.mu_all[frame.dirs[1]];
      IntervalMatrix M(frame.n, frame.n);
      for (int r = 0; r < frame.n; ++r) {
        for (int c = 0; c < frame.n; ++c) M(r, c) = ComplexInterval{} - field.dg0(r, c);
        M(r, r) += am;
      }
      IntervalMatrix b(frame.n, 1);
      b(frame.n - 1, 0) = R;
      const IntervalMatrix x = verified_solve(M, b);
      for (int r = 0; r < frame.n; ++r) man.P.at(ai, aj, r, 0) = x(r, 0);
      p1.at(ai, aj) = man.P.at(ai, aj, 0, 0);
    });
  }
  return man;
}

ComplexInterval scale_for_norm(const EigenFrame& f, int k, const Interval& s) {
  Interval nrm = vec_norm_l2(take_cols(f.V, {f.dirs[k]}));
  return ComplexInterval{s / nrm, Interval{0.0, 0.0}};
}

Interval manifold_KN(const Spectrum& sp, int N) {
  Interval vn = mat_norm_col1(sp.Vhat);
  Interval mx{0.0, 0.0};
  for (int i = 0; i < 4; ++i) {
    Interval a = abs(sp.Vhat_inv(i, 3));
    mx = Interval{std::max(mx.lo, a.lo), std::max(mx.hi, a.hi)};
  }
  return vn * mx / (static_cast<double>(N) * sp.re_mu_u);
}

RadiiBounds manifold_radii_bounds(const ManifoldParam& man, const Spectrum& sp) {
  int N = man.order;
  RadiiBounds rb;
  rb.KN = manifold_KN(sp, N);
  Interval delta{1.0, 1.0};
  Interval a2 = abs(man.field.c2), a3 = abs(man.field.c3);
  MultiSeries p1 = component(man.P, 0);
  MultiSeries pp = cauchy(p1, p1, 2 * N);
  MultiSeries ppp = cauchy(pp, p1, 3 * N);
  rb.Y0 = rb.KN * (a2 * norm_l1(pp, delta, N + 1, 2 * N) +
                   a3 * norm_l1(ppp, delta, N + 1, 3 * N));
  rb.Z1 = rb.KN * (2.0 * a2 * norm_l1(p1, delta, 1, N) +
                   3.0 * a3 * norm_l1(pp, delta, 1, 2 * N));
  rb.Z2_const = rb.KN * (2.0 * a2 + 6.0 * a3 * norm_l1(p1, delta, 1, N));
  rb.Z2_lin = 3.0 * a3 * rb.KN;
  return rb;
}

void find_radius(RadiiBounds& rb) {
  if (!(rb.Z1.hi < 1.0)) throw Error("contraction not verified; increase N");
  for (int k = 0; k < 40; ++k) {
    double r = 1e-18 * std::pow(1e16, k / 39.0);
    Interval rr{r, r};
    Interval p = (rb.Z2_const + rb.Z2_lin * rr) * sqr(rr) + (rb.Z1 - 1.0) * rr + rb.Y0;
    if (p.hi < 0.0) {
      rb.r0 = r;
      rb.validated = true;
      return;
    }
  }
  throw Error("contraction not verified; increase N");
}

MultiSeries invariance_residual(const FieldSpec& field, const ManifoldParam& man) {
  int N = man.order, n = field.n;
  MultiSeries p1 = component(man.P, 0);
  MultiSeries pp = cauchy(p1, p1, N);
  MultiSeries ppp = cauchy(pp, p1, N);
  MultiSeries res(man.frame.d, N, n, 1);
  for_each_index(man.frame.d, N, [&](int i, int j) {
    ComplexInterval am = static_cast<double>(i) * man.frame.mu_all[man.frame.dirs[0]];
    if (man.frame.d == 2) am += static_cast<double>(j) * man.frame.mu_all[man.frame.dirs[1]];
    for (int r = 0; r < n; ++r) {
      ComplexInterval g{};
      for (int c = 0; c < n; ++c) g += field.dg0(r, c) * man.P.at(i, j, c, 0);
      if (r == n - 1) g += field.c2 * pp.at(i, j) + field.c3 * ppp.at(i, j);
      res.at(i, j, r, 0) = am * man.P.at(i, j, r, 0) - g;
    }
  });
  return res;
}

void check_conjugate_symmetry(const MultiSeries& P) {
  if (P.m != 2) throw Error("conjugate symmetry applies to two-variable series");
  for_each_index(2, P.order, [&](int i, int j) {
    if (j > i) return;
    for (int r = 0; r < P.crows; ++r)
      for (int c = 0; c < P.ccols; ++c)
        if (!overlap(P.at(i, j, r, c), conj(P.at(j, i, r, c))))
          throw Error("conjugate symmetry violated");
  });
}

std::vector<double> real_trace(const MultiSeries& P, double s, double t,
                               const Interval& delta) {
  std::vector<ComplexInterval> sigma;
  if (P.m == 2) {
    check_conjugate_symmetry(P);
    sigma = {ComplexInterval{Interval{s, s}, Interval{t, t}},
             ComplexInterval{Interval{s, s}, Interval{-t, -t}}};
  } else {
    sigma = {ComplexInterval{Interval{s, s}, Interval{t, t}}};
  }
  std::vector<ComplexInterval> v = eval(P, sigma, delta);
  std::vector<double> out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = v[k].re.mid();
  return out;
}

}  // namespace rb
