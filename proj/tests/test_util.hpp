#pragma once

// Shared helpers for the test binaries: exact rational reference
// arithmetic for containment checks of interval operations, and a small
// deterministic random-input driver.  Every check asks whether an exact
// rational result of sampled member inputs lies inside the computed
// enclosure; rational comparison is exact, so a single violation is a
// definite soundness bug.

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <utility>
#include <vector>

#include "rb/interval.hpp"
#include "rb/series.hpp"

namespace rbtest {

using Rational = boost::multiprecision::cpp_rational;

inline Rational rat(double x) { return Rational(x); }

inline bool rat_in(const Rational& q, const rb::Interval& iv) {
  return rat(iv.lo) <= q && q <= rat(iv.hi);
}

struct RationalComplex {
  Rational re, im;
};

inline RationalComplex rc_mul(const RationalComplex& a, const RationalComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline RationalComplex rc_add(const RationalComplex& a, const RationalComplex& b) {
  return {a.re + b.re, a.im + b.im};
}
inline RationalComplex rc_sub(const RationalComplex& a, const RationalComplex& b) {
  return {a.re - b.re, a.im - b.im};
}

inline bool rc_in(const RationalComplex& q, const rb::ComplexInterval& z) {
  return rat_in(q.re, z.re) && rat_in(q.im, z.im);
}

struct ContainmentStats {
  long long checks = 0;
  long long violations = 0;
};

inline void merge(ContainmentStats& into, const ContainmentStats& from) {
  into.checks += from.checks;
  into.violations += from.violations;
}

class RandomInputs {
 public:
  explicit RandomInputs(uint64_t seed) : eng_(seed) {}

  double raw_double() {
    std::uniform_real_distribution<double> mant(-2.0, 2.0);
    std::uniform_int_distribution<int> expo(-8, 8);
    return std::ldexp(mant(eng_), 3 * expo(eng_));
  }

  rb::Interval interval(bool allow_zero_span = true) {
    double c = raw_double();
    switch (pick(4)) {
      case 0:
        return rb::Interval(c);  // point
      case 1: {
        double r = std::fabs(c) * 1e-13 + 1e-300;
        return rb::Interval(c - r, c + r);
      }
      case 2: {
        double r = std::fabs(c) * 0.25 + 0.125;
        return rb::Interval(c - r, c + r);
      }
      default: {
        if (!allow_zero_span) {
          double r = std::fabs(c) * 0.5;
          return c >= 0.0 ? rb::Interval(c + 0.25, c + 0.25 + r)
                          : rb::Interval(c - 0.25 - r, c - 0.25);
        }
        double r = std::fabs(raw_double());
        return rb::Interval(std::min(c, c - r), std::max(c, c + r));
      }
    }
  }

  rb::ComplexInterval cinterval() { return {interval(), interval()}; }

  int pick(int n) {
    std::uniform_int_distribution<int> d(0, n - 1);
    return d(eng_);
  }

  // Exact rational member of the interval: an endpoint or the exact
  // rational midpoint.
  Rational member(const rb::Interval& iv) {
    switch (pick(3)) {
      case 0:
        return rat(iv.lo);
      case 1:
        return rat(iv.hi);
      default:
        return (rat(iv.lo) + rat(iv.hi)) / 2;
    }
  }

  RationalComplex member(const rb::ComplexInterval& z) {
    return {member(z.re), member(z.im)};
  }

 private:
  std::mt19937_64 eng_;
};

// Field operations, squaring, roots, absolute values and integer powers
// on real intervals against exact rational samples.
inline ContainmentStats run_scalar_containment(uint64_t seed, int trials) {
  RandomInputs rng(seed);
  ContainmentStats st;
  auto check = [&](bool ok) {
    ++st.checks;
    if (!ok) ++st.violations;
  };
  for (int t = 0; t < trials; ++t) {
    rb::Interval a = rng.interval();
    rb::Interval b = rng.interval();
    Rational x = rng.member(a), y = rng.member(b);

    check(rat_in(x + y, a + b));
    check(rat_in(x - y, a - b));
    check(rat_in(x * y, a * b));
    check(rat_in(x * x, sqr(a)));
    check(rat_in(x < 0 ? -x : x, abs(a)));

    if (b.contains_zero()) {
      bool threw = false;
      try {
        (void)(a / b);
      } catch (const rb::Error&) {
        threw = true;
      }
      check(threw);
    } else {
      check(rat_in(x / y, a / b));
    }

    if (a.lo >= 0.0) {
      rb::Interval s = sqrt(a);
      check(s.lo >= 0.0 && rat(s.lo) * rat(s.lo) <= x && x <= rat(s.hi) * rat(s.hi));
    }

    int k = rng.pick(5);
    Rational p = 1;
    for (int i = 0; i < k; ++i) p *= x;
    check(rat_in(p, pow_int(a, k)));
  }
  return st;
}

// Complex rectangle operations against exact rational complex samples.
inline ContainmentStats run_complex_containment(uint64_t seed, int trials) {
  RandomInputs rng(seed);
  ContainmentStats st;
  auto check = [&](bool ok) {
    ++st.checks;
    if (!ok) ++st.violations;
  };
  for (int t = 0; t < trials; ++t) {
    rb::ComplexInterval u = rng.cinterval();
    rb::ComplexInterval v = rng.cinterval();
    RationalComplex x = rng.member(u), y = rng.member(v);

    check(rc_in(rc_add(x, y), u + v));
    check(rc_in(rc_sub(x, y), u - v));
    check(rc_in(rc_mul(x, y), u * v));
    check(rc_in({x.re, -x.im}, conj(u)));
    check(rat_in(x.re * x.re + x.im * x.im, abs2(u)));

    Rational den = y.re * y.re + y.im * y.im;
    if (abs2(v).contains_zero()) {
      bool threw = false;
      try {
        (void)(u / v);
      } catch (const rb::Error&) {
        threw = true;
      }
      check(threw);
    } else {
      RationalComplex num = rc_mul(x, {y.re, -y.im});
      rb::ComplexInterval q = u / v;
      check(rat_in(num.re / den, q.re) && rat_in(num.im / den, q.im));
    }
  }
  return st;
}

// Cauchy products of two-variable series with interval coefficients
// against the exact rational convolution of sampled member coefficients.
inline ContainmentStats run_series_containment(uint64_t seed, int trials) {
  RandomInputs rng(seed);
  ContainmentStats st;
  const int ord = 4, out = 8;
  for (int t = 0; t < trials; ++t) {
    rb::MultiSeries a(2, ord, 1, 1), b(2, ord, 1, 1);
    std::vector<std::vector<RationalComplex>> xa(ord + 1), xb(ord + 1);
    for (int g = 0; g <= ord; ++g) {
      xa[g].resize(g + 1);
      xb[g].resize(g + 1);
      for (int j = 0; j <= g; ++j) {
        a.at(g - j, j) = rng.cinterval();
        b.at(g - j, j) = rng.cinterval();
        xa[g][j] = rng.member(a.at(g - j, j));
        xb[g][j] = rng.member(b.at(g - j, j));
      }
    }
    rb::MultiSeries full = cauchy(a, b, out);
    rb::MultiSeries hat = cauchy_hat(a, b, out);
    for (int g = 0; g <= out; ++g) {
      for (int j = 0; j <= g; ++j) {
        RationalComplex sf{0, 0}, sh{0, 0};
        int i = g - j;
        for (int gb = 0; gb <= std::min(g, ord); ++gb) {
          int gc = g - gb;
          if (gc > ord) continue;
          for (int jb = 0; jb <= gb; ++jb) {
            int jc = j - jb;
            int ib = gb - jb, ic = gc - jc;
            if (jc < 0 || jc > gc || ic < 0 || ib < 0) continue;
            RationalComplex term = rc_mul(xa[gb][jb], xb[gc][jc]);
            sf = rc_add(sf, term);
            if (gb > 0 && gc > 0) sh = rc_add(sh, term);
          }
        }
        ++st.checks;
        if (!rc_in(sf, full.at(i, j))) ++st.violations;
        ++st.checks;
        if (!rc_in(sh, hat.at(i, j))) ++st.violations;
      }
    }
  }
  return st;
}

}  // namespace rbtest
