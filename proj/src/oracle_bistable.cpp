#include "rb/oracle_bistable.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "rb/bundle.hpp"
#include "rb/manifold.hpp"
#include "rb/series.hpp"

namespace rb {

namespace {

Rational pow_sign(int k) { return (k % 2 == 0) ? Rational(1) : Rational(-1); }

// Truncated product of scalar coefficient sequences.
std::vector<Rational> rconv(const std::vector<Rational>& a,
                            const std::vector<Rational>& b, int order) {
  std::vector<Rational> out(static_cast<size_t>(order) + 1, Rational(0));
  for (size_t i = 0; i < a.size() && i < out.size(); ++i)
    for (size_t j = 0; j < b.size() && i + j < out.size(); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

std::vector<Rational> first_component(const RPoly2& P) {
  std::vector<Rational> p(P.size());
  for (size_t k = 0; k < P.size(); ++k) p[k] = P[k][0];
  return p;
}

}  // namespace

RPoly2 exact_manifold(int order) {
  RPoly2 P(static_cast<size_t>(order) + 1);
  P[0] = {Rational(0), Rational(0)};
  for (int k = 1; k <= order; ++k)
    P[static_cast<size_t>(k)] = {pow_sign(k), pow_sign(k - 1) * k};
  return P;
}

RPoly2 exact_tangent_frame(int order) {
  RPoly2 W(static_cast<size_t>(order) + 1);
  for (int k = 0; k <= order; ++k)
    W[static_cast<size_t>(k)] = {Rational(k + 1) * pow_sign(k + 1),
                                 Rational(k + 1) * Rational(k + 1) * pow_sign(k)};
  return W;
}

std::vector<Rational> exact_q_series(int order) {
  const RPoly2 P = exact_manifold(order);
  const std::vector<Rational> p1 = first_component(P);
  const std::vector<Rational> p1p1 = rconv(p1, p1, order);
  std::vector<Rational> q(static_cast<size_t>(order) + 1);
  for (int k = 0; k <= order; ++k)
    q[static_cast<size_t>(k)] = 6 * p1[static_cast<size_t>(k)] +
                                6 * p1p1[static_cast<size_t>(k)];
  return q;
}

ExactBundle exact_unstable_bundle(int order, const Rational& gauge) {
  if (order < 2) throw Error("bundle order must reach the resonant grade");
  const std::vector<Rational> qh = exact_q_series(order);
  const RPoly2 ws = exact_tangent_frame(order);
  ExactBundle B;
  B.wu.assign(static_cast<size_t>(order) + 1, {Rational(0), Rational(0)});
  B.wu[0] = {Rational(1), Rational(1)};
  for (int al = 1; al <= order; ++al) {
    // r = sum_{b>=1} qh_b (wu_{al-b})_1 e_2 - a ws_{al-2}
    RVec2 r = {Rational(0), Rational(0)};
    for (int b = 1; b <= al; ++b)
      r[1] += qh[static_cast<size_t>(b)] * B.wu[static_cast<size_t>(al - b)][0];
    if (al == 2) {
      // ((1-al)I - dg0) is singular with range {x1 == x2}; matching the two
      // components of r - a ws_0 fixes a, and the kernel direction carries
      // the gauge freedom.
      const Rational denom = ws[0][0] - ws[0][1];
      B.a = (r[0] - r[1]) / denom;
      const Rational rr = r[0] - B.a * ws[0][0];
      B.wu[2] = {-rr / 2 + gauge * ws[0][0], -rr / 2 + gauge * ws[0][1]};
      continue;
    }
    if (al > 2) {
      r[0] -= B.a * ws[static_cast<size_t>(al - 2)][0];
      r[1] -= B.a * ws[static_cast<size_t>(al - 2)][1];
    }
    const Rational det = Rational(al) * Rational(al - 2);
    const Rational d = Rational(1 - al);
    B.wu[static_cast<size_t>(al)] = {(d * r[0] + r[1]) / det,
                                     (r[0] + d * r[1]) / det};
  }
  return B;
}

bool exact_invariance_holds(const RPoly2& P) {
  const int order = static_cast<int>(P.size()) - 1;
  const std::vector<Rational> p1 = first_component(P);
  const std::vector<Rational> pp = rconv(p1, p1, order);
  const std::vector<Rational> ppp = rconv(pp, p1, order);
  for (int k = 0; k <= order; ++k) {
    const size_t u = static_cast<size_t>(k);
    const Rational lhs1 = -Rational(k) * P[u][0];
    const Rational lhs2 = -Rational(k) * P[u][1];
    const Rational rhs2 = P[u][0] + 3 * pp[u] + 2 * ppp[u];
    if (lhs1 != P[u][1] || lhs2 != rhs2) return false;
  }
  return true;
}

bool exact_bundle_conjugacy_holds(const RPoly2& P, const RPoly2& ws,
                                  const RPoly2& wu, const Rational& a) {
  const int order =
      static_cast<int>(std::min(ws.size(), wu.size())) - 1;
  if (order < 2 || static_cast<int>(P.size()) - 1 < order) return false;
  std::vector<Rational> qh(static_cast<size_t>(order) + 1);
  {
    const std::vector<Rational> p1 = first_component(P);
    const std::vector<Rational> pp = rconv(p1, p1, order);
    for (int k = 0; k <= order; ++k)
      qh[static_cast<size_t>(k)] =
          6 * p1[static_cast<size_t>(k)] + 6 * pp[static_cast<size_t>(k)];
  }
  // Column equations: -al w_al = dg0 w_al + e2 (qh * w^{(1)})_al - mu w_al
  // - [normal column only] a ws_{al-2}, with mu = -1 and +1 respectively.
  for (int al = 0; al <= order; ++al) {
    const size_t u = static_cast<size_t>(al);
    Rational cs(0), cu(0);  // hat-convolution terms landing in row 2
    for (int b = 1; b <= al; ++b) {
      cs += qh[static_cast<size_t>(b)] * ws[static_cast<size_t>(al - b)][0];
      cu += qh[static_cast<size_t>(b)] * wu[static_cast<size_t>(al - b)][0];
    }
    const Rational s1 = ws[u][1] + ws[u][0];  // dg0 row1 + (-mu_s) w
    const Rational s2 = ws[u][0] + cs + ws[u][1];
    if (-Rational(al) * ws[u][0] != s1) return false;
    if (-Rational(al) * ws[u][1] != s2) return false;
    Rational u1 = wu[u][1] - wu[u][0];
    Rational u2 = wu[u][0] + cu - wu[u][1];
    if (al >= 2) {
      u1 -= a * ws[static_cast<size_t>(al - 2)][0];
      u2 -= a * ws[static_cast<size_t>(al - 2)][1];
    }
    if (-Rational(al) * wu[u][0] != u1) return false;
    if (-Rational(al) * wu[u][1] != u2) return false;
  }
  return true;
}

bool exact_closed_forms_hold(const RPoly2& P, const std::vector<Rational>& q) {
  const int order = static_cast<int>(P.size()) - 1;
  if (static_cast<int>(q.size()) - 1 < order) return false;
  // (1 + s) v1(s) = -s, coefficientwise.
  for (int k = 0; k <= order; ++k) {
    Rational lhs = P[static_cast<size_t>(k)][0];
    if (k >= 1) lhs += P[static_cast<size_t>(k - 1)][0];
    const Rational rhs = (k == 1) ? Rational(-1) : Rational(0);
    if (lhs != rhs) return false;
  }
  // (1 + q(s)) (1 + s)^2 = 1 - 4 s + s^2, coefficientwise, where q here
  // stores f'(v1) - f'(0).
  for (int k = 0; k <= order; ++k) {
    Rational full = q[static_cast<size_t>(k)] + (k == 0 ? Rational(1) : Rational(0));
    Rational lhs = full;
    if (k >= 1)
      lhs += 2 * (q[static_cast<size_t>(k - 1)] + (k == 1 ? Rational(1) : Rational(0)));
    if (k >= 2)
      lhs += q[static_cast<size_t>(k - 2)] + (k == 2 ? Rational(1) : Rational(0));
    Rational rhs(0);
    if (k == 0) rhs = 1;
    if (k == 1) rhs = -4;
    if (k == 2) rhs = 1;
    if (lhs != rhs) return false;
  }
  return true;
}

Interval enclose(const Rational& r) {
  double d = r.convert_to<double>();
  if (!std::isfinite(d)) throw Error("rational is out of double range");
  if (Rational(d) == r) return Interval(d, d);
  const double inf = std::numeric_limits<double>::infinity();
  double lo = d, hi = d;
  while (Rational(lo) > r) lo = std::nextafter(lo, -inf);
  while (Rational(hi) < r) hi = std::nextafter(hi, inf);
  return Interval(lo, hi);
}

namespace {

// Deviation tracking: generic interval minus exact rational must straddle 0.
struct DevTracker {
  bool all_zero = true;
  double max_width = 0.0;
  void feed(const Interval& x) {
    if (!x.contains_zero()) all_zero = false;
    max_width = std::max(max_width, x.width());
  }
  void feed(const ComplexInterval& g, const Rational& exact) {
    feed(g.re - enclose(exact));
    feed(g.im);
  }
};

}  // namespace

OracleReport run_oracle(int order) {
  const auto t0 = std::chrono::steady_clock::now();
  OracleReport rep;
  rep.order = order;
  if (order < 3) throw Error("oracle order must be at least 3");

  // Exact side, with substitution proofs.
  const RPoly2 P = exact_manifold(order + 1);
  const RPoly2 ws = exact_tangent_frame(order);
  const std::vector<Rational> q = exact_q_series(order + 1);
  const ExactBundle bu = exact_unstable_bundle(order, Rational(0));
  rep.exact_invariance = exact_invariance_holds(P);
  rep.exact_conjugacy = exact_bundle_conjugacy_holds(P, ws, bu.wu, bu.a);
  rep.exact_closed_forms = exact_closed_forms_hold(P, q);
  rep.normal_form_values_ok =
      bu.a == Rational(-12) && bu.wu[1] == RVec2{Rational(6), Rational(0)} &&
      bu.wu[2] == RVec2{Rational(6), Rational(6)} &&
      bu.wu[3] == RVec2{Rational(-26), Rational(28)};

  // Validated side.
  const FieldSpec field = field_bistable();
  const EigenFrame frame = bistable_frame();
  const ManifoldParam man =
      solve_manifold_coeffs(field, frame, order, {ci(1.0)});
  const BundleFrame bf = solve_bundle_coeffs(field, man);

  rep.resonance_table_ok =
      bf.table.total() == 1 && bf.table.is_resonant(0, 1, {2}) &&
      bf.entries.size() == 1 && bf.entries[0].i == 0 && bf.entries[0].j == 1 &&
      bf.entries[0].beta == std::vector<int>{2};

  DevTracker dev;
  for (int k = 0; k <= order; ++k)
    for (int r = 0; r < 2; ++r)
      dev.feed(man.P.at(k, 0, r, 0), P[static_cast<size_t>(k)][r]);
  for (int k = 0; k <= order; ++k)
    for (int r = 0; r < 2; ++r) {
      dev.feed(bf.W.at(k, 0, r, 0), ws[static_cast<size_t>(k)][r]);
      dev.feed(bf.W.at(k, 0, r, 1), bu.wu[static_cast<size_t>(k)][r]);
    }
  if (!bf.entries.empty()) dev.feed(bf.entries[0].a, bu.a);
  rep.deviations_contain_zero = dev.all_zero;
  rep.max_dev_width = dev.max_width;

  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

}  // namespace rb
