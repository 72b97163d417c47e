#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

// Real and complex interval arithmetic with outward rounding.
//
// Rounding policy: endpoints are computed with round-to-nearest and then
// corrected using the exact error term (two-sum for +/-, fma for *,/ and
// sqrt). When the rounded result is exact the endpoint is kept as is;
// otherwise it is moved outward by one ulp. Worst-case inflation is
// therefore one ulp per operation. Transcendental endpoints (exp, sin,
// cos, atan, pi) are computed by MPFR with directed rounding at 53-bit
// precision, which is correctly rounded by construction.

namespace rb {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline double next_up(double x) {
  return std::nextafter(x, std::numeric_limits<double>::infinity());
}
inline double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

namespace detail {
inline void require_finite(double x) {
  if (!std::isfinite(x)) throw Error("interval endpoint not finite");
}
// Lower bound of x+y: round-to-nearest sum corrected by the exact
// two-sum error term.
inline double add_down(double x, double y) {
  double s = x + y;
  require_finite(s);
  double bb = s - x;
  double err = (x - (s - bb)) + (y - bb);
  return err >= 0.0 ? s : next_down(s);
}
inline double add_up(double x, double y) {
  double s = x + y;
  require_finite(s);
  double bb = s - x;
  double err = (x - (s - bb)) + (y - bb);
  return err <= 0.0 ? s : next_up(s);
}
inline double mul_down(double x, double y) {
  double p = x * y;
  require_finite(p);
  double err = std::fma(x, y, -p);
  return err >= 0.0 ? p : next_down(p);
}
inline double mul_up(double x, double y) {
  double p = x * y;
  require_finite(p);
  double err = std::fma(x, y, -p);
  return err <= 0.0 ? p : next_up(p);
}
// Quotient direction test: q*y + r = x exactly, so sign(true - q) =
// sign(r/y) = sign(r)*sign(y).
inline double div_down(double x, double y) {
  double q = x / y;
  require_finite(q);
  double r = std::fma(q, y, -x);
  bool true_below = (r > 0.0) == (y > 0.0);  // true quotient < q
  if (r == 0.0) return q;
  return true_below ? next_down(q) : q;
}
inline double div_up(double x, double y) {
  double q = x / y;
  require_finite(q);
  double r = std::fma(q, y, -x);
  bool true_above = (r < 0.0) == (y > 0.0);  // true quotient > q
  if (r == 0.0) return q;
  return true_above ? next_up(q) : q;
}
inline double sqrt_down(double x) {
  double s = std::sqrt(x);
  double err = std::fma(s, s, -x);  // s^2 - x
  return err <= 0.0 ? s : next_down(s);
}
inline double sqrt_up(double x) {
  double s = std::sqrt(x);
  double err = std::fma(s, s, -x);
  return err >= 0.0 ? s : next_up(s);
}
}  // namespace detail

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  explicit Interval(double x) : lo(x), hi(x) { detail::require_finite(x); }
  Interval(double l, double h) : lo(l), hi(h) {
    detail::require_finite(l);
    detail::require_finite(h);
    if (l > h) throw Error("interval endpoints out of order");
  }

  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains_zero() const { return contains(0.0); }
  double mid() const { return 0.5 * (lo + hi); }
  double width() const { return detail::add_up(hi, -lo); }
  // Largest possible magnitude of a member.
  double mag() const { return std::max(std::fabs(lo), std::fabs(hi)); }
  // Smallest possible magnitude of a member (distance from 0).
  double mig() const {
    if (contains_zero()) return 0.0;
    return std::min(std::fabs(lo), std::fabs(hi));
  }
};

inline Interval operator+(const Interval& a, const Interval& b) {
  return {detail::add_down(a.lo, b.lo), detail::add_up(a.hi, b.hi)};
}
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline Interval operator-(const Interval& a, const Interval& b) {
  return {detail::add_down(a.lo, -b.hi), detail::add_up(a.hi, -b.lo)};
}
inline Interval operator*(const Interval& a, const Interval& b) {
  using detail::mul_down;
  using detail::mul_up;
  double lo = std::min(std::min(mul_down(a.lo, b.lo), mul_down(a.lo, b.hi)),
                       std::min(mul_down(a.hi, b.lo), mul_down(a.hi, b.hi)));
  double hi = std::max(std::max(mul_up(a.lo, b.lo), mul_up(a.lo, b.hi)),
                       std::max(mul_up(a.hi, b.lo), mul_up(a.hi, b.hi)));
  return {lo, hi};
}
inline Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw Error("singular divisor");
  using detail::div_down;
  using detail::div_up;
  double lo = std::min(std::min(div_down(a.lo, b.lo), div_down(a.lo, b.hi)),
                       std::min(div_down(a.hi, b.lo), div_down(a.hi, b.hi)));
  double hi = std::max(std::max(div_up(a.lo, b.lo), div_up(a.lo, b.hi)),
                       std::max(div_up(a.hi, b.lo), div_up(a.hi, b.hi)));
  return {lo, hi};
}

inline Interval& operator+=(Interval& a, const Interval& b) { return a = a + b; }
inline Interval& operator-=(Interval& a, const Interval& b) { return a = a - b; }
inline Interval& operator*=(Interval& a, const Interval& b) { return a = a * b; }

inline Interval operator+(const Interval& a, double b) { return a + Interval(b); }
inline Interval operator+(double a, const Interval& b) { return Interval(a) + b; }
inline Interval operator-(const Interval& a, double b) { return a - Interval(b); }
inline Interval operator-(double a, const Interval& b) { return Interval(a) - b; }
inline Interval operator*(const Interval& a, double b) { return a * Interval(b); }
inline Interval operator*(double a, const Interval& b) { return Interval(a) * b; }
inline Interval operator/(const Interval& a, double b) { return a / Interval(b); }
inline Interval operator/(double a, const Interval& b) { return Interval(a) / b; }

// x*x is tighter than the generic product when x straddles 0.
inline Interval sqr(const Interval& x) {
  double m = x.mag(), n = x.mig();
  return {detail::mul_down(n, n), detail::mul_up(m, m)};
}

inline Interval sqrt(const Interval& x) {
  if (x.lo < 0.0) throw Error("sqrt of interval extending below zero");
  return {detail::sqrt_down(x.lo), detail::sqrt_up(x.hi)};
}

inline Interval abs(const Interval& x) {
  if (x.lo >= 0.0) return x;
  if (x.hi <= 0.0) return -x;
  return {0.0, x.mag()};
}

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline bool try_intersect(const Interval& a, const Interval& b, Interval& out) {
  double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
  if (lo > hi) return false;
  out = Interval(lo, hi);
  return true;
}

inline bool overlap(const Interval& a, const Interval& b) {
  return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi);
}

// Nonnegative integer power by repeated squaring.
inline Interval pow_int(const Interval& x, int k) {
  if (k < 0) throw Error("negative power not supported");
  Interval r(1.0);
  Interval base = x;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = sqr(base);
    k >>= 1;
  }
  return r;
}

// Certified strict comparison: every member of a is below every member of b.
inline bool certainly_less(const Interval& a, const Interval& b) {
  return a.hi < b.lo;
}

// Transcendentals with MPFR directed-rounding endpoints (src/interval.cpp).
Interval exp(const Interval& x);
Interval sin(const Interval& x);
Interval cos(const Interval& x);
Interval atan(const Interval& x);
Interval pi_interval();

// Axis-aligned rectangle enclosure of a complex number.
struct ComplexInterval {
  Interval re, im;

  ComplexInterval() = default;
  explicit ComplexInterval(double x) : re(x), im(0.0) {}
  ComplexInterval(double r, double i) : re(r), im(i) {}
  ComplexInterval(const Interval& r, const Interval& i) : re(r), im(i) {}

  bool contains(double r, double i) const { return re.contains(r) && im.contains(i); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

inline ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
inline ComplexInterval operator-(const ComplexInterval& a) { return {-a.re, -a.im}; }
inline ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline ComplexInterval operator*(const Interval& a, const ComplexInterval& b) {
  return {a * b.re, a * b.im};
}
inline ComplexInterval operator*(const ComplexInterval& a, const Interval& b) {
  return {a.re * b, a.im * b};
}
inline ComplexInterval operator*(double a, const ComplexInterval& b) {
  return Interval(a) * b;
}
inline ComplexInterval& operator+=(ComplexInterval& a, const ComplexInterval& b) {
  return a = a + b;
}
inline ComplexInterval& operator-=(ComplexInterval& a, const ComplexInterval& b) {
  return a = a - b;
}

inline ComplexInterval conj(const ComplexInterval& a) { return {a.re, -a.im}; }

// Enclosure of |z|^2 over the rectangle.
inline Interval abs2(const ComplexInterval& z) { return sqr(z.re) + sqr(z.im); }

// Enclosure of |z| over the rectangle.
inline Interval abs(const ComplexInterval& z) { return sqrt(abs2(z)); }

inline ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
  Interval den = abs2(b);
  if (den.contains_zero()) throw Error("singular divisor");
  ComplexInterval num = a * conj(b);
  return {num.re / den, num.im / den};
}
inline ComplexInterval operator/(const ComplexInterval& a, const Interval& b) {
  if (b.contains_zero()) throw Error("singular divisor");
  return {a.re / b, a.im / b};
}

inline ComplexInterval exp(const ComplexInterval& z) {
  Interval r = exp(z.re);
  return {r * cos(z.im), r * sin(z.im)};
}

// r*e^{i*phi} as a rectangle.
inline ComplexInterval from_polar(const Interval& r, const Interval& phi) {
  return {r * cos(phi), r * sin(phi)};
}

inline bool overlap(const ComplexInterval& a, const ComplexInterval& b) {
  return overlap(a.re, b.re) && overlap(a.im, b.im);
}

}  // namespace rb
