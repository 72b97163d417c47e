#include "rb/interval.hpp"

#include <mpfr.h>

// Transcendental endpoints. MPFR computes correctly rounded values at
// 53-bit precision with an explicit rounding direction, so the returned
// doubles are certified one-sided bounds with no heuristic widening.

namespace rb {
namespace {

enum class Fn { Exp, Sin, Cos, Atan };

double eval_dir(Fn f, double x, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_d(t, x, MPFR_RNDN);  // exact: x is already a double
  switch (f) {
    case Fn::Exp: mpfr_exp(t, t, rnd); break;
    case Fn::Sin: mpfr_sin(t, t, rnd); break;
    case Fn::Cos: mpfr_cos(t, t, rnd); break;
    case Fn::Atan: mpfr_atan(t, t, rnd); break;
  }
  double r = mpfr_get_d(t, rnd);
  mpfr_clear(t);
  detail::require_finite(r);
  return r;
}

}  // namespace

Interval pi_interval() {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_const_pi(t, MPFR_RNDD);
  double lo = mpfr_get_d(t, MPFR_RNDD);
  mpfr_const_pi(t, MPFR_RNDU);
  double hi = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return {lo, hi};
}

Interval exp(const Interval& x) {
  double lo = eval_dir(Fn::Exp, x.lo, MPFR_RNDD);
  double hi = eval_dir(Fn::Exp, x.hi, MPFR_RNDU);
  if (lo < 0.0) lo = 0.0;
  return {lo, hi};
}

Interval atan(const Interval& x) {
  return {eval_dir(Fn::Atan, x.lo, MPFR_RNDD), eval_dir(Fn::Atan, x.hi, MPFR_RNDU)};
}

namespace {

// Shared monotone-piece analysis for sin and cos. Endpoint values are
// hulled, then any critical point whose enclosure may intersect x forces
// the corresponding extreme value into the result. Critical points are
// at pi*(offset + k) with extreme +1 for even k, -1 for odd k.
Interval trig(const Interval& x, Fn f, double crit_offset) {
  if (x.hi - x.lo >= 6.3) return {-1.0, 1.0};  // window longer than 2*pi
  double lo = std::min(eval_dir(f, x.lo, MPFR_RNDD), eval_dir(f, x.hi, MPFR_RNDD));
  double hi = std::max(eval_dir(f, x.lo, MPFR_RNDU), eval_dir(f, x.hi, MPFR_RNDU));
  Interval pi = pi_interval();
  const double approx_pi = 3.141592653589793;
  long k0 = static_cast<long>(std::floor(x.lo / approx_pi - crit_offset)) - 1;
  long k1 = static_cast<long>(std::ceil(x.hi / approx_pi - crit_offset)) + 1;
  for (long k = k0; k <= k1; ++k) {
    Interval crit = pi * Interval(static_cast<double>(k) + crit_offset);
    if (overlap(crit, x)) {
      if ((k % 2 + 2) % 2 == 0) hi = 1.0;
      else lo = -1.0;
    }
  }
  lo = std::max(lo, -1.0);
  hi = std::min(hi, 1.0);
  return {lo, hi};
}

}  // namespace

Interval sin(const Interval& x) { return trig(x, Fn::Sin, 0.5); }
Interval cos(const Interval& x) { return trig(x, Fn::Cos, 0.0); }

}  // namespace rb
