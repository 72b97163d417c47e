#include <doctest.h>

#include "rb/ivmatrix.hpp"
#include "rb/spectrum.hpp"

using namespace rb;

namespace {
// p(z) = z^4 + 2 z^2 + (1 + mu_hat), the characteristic polynomial of the
// linearization; containment of zero at each root is the eigenvalue oracle.
ComplexInterval charpoly(const ComplexInterval& z, const Interval& mu_hat) {
  ComplexInterval z2 = z * z;
  return z2 * z2 + 2.0 * z2 + ComplexInterval(Interval(1.0) + mu_hat, Interval(0.0));
}
}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("quartet roots satisfy the characteristic polynomial") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    REQUIRE(sp.mu.size() == 4);
    for (const auto& m : sp.mu) {
      ComplexInterval p = charpoly(m, sp.mu_hat);
      CHECK(p.contains_zero());
      CHECK(abs(p).hi <= 1e-13);
    }
  }

  TEST_CASE("quartet structure: conjugate pairs and sign mirror") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    CHECK(sp.mu[0].re.hi < 0.0);
    CHECK(sp.mu[1].re.hi < 0.0);
    CHECK(sp.mu[2].re.lo > 0.0);
    CHECK(sp.mu[3].re.lo > 0.0);
    CHECK(overlap(conj(sp.mu[0]), sp.mu[1]));
    CHECK(overlap(conj(sp.mu[2]), sp.mu[3]));
    CHECK((sp.mu[0] + sp.mu[2]).contains_zero());
    CHECK((sp.mu[1] + sp.mu[3]).contains_zero());
    CHECK(sp.mu[2].im.lo > 0.0);  // principal unstable root in the upper half plane
  }

  TEST_CASE("frozen constants at parameter 0.2") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    // 40-digit references: rho = 1.09544511501033222..., Re mu_u =
    // 0.2184549324349672665..., Im mu_u = 1.0235831952045549841...,
    // max column norm of the rescaled basis = 1.9600125962653766619...
    auto pin = [](const Interval& iv, double ref) {
      CHECK(std::fabs(iv.mid() - ref) <= 1e-14);
      CHECK(iv.width() <= 1e-13);
    };
    pin(sp.rho, 1.0954451150103322);
    pin(sp.re_mu_u, 0.21845493243496727);
    pin(sp.mu[2].im, 1.0235831952045550);
    pin(sp.evec_norm, 1.9600125962653767);
    CHECK(sp.K.lo >= 2.5);
    CHECK(sp.K.hi <= 5.0);
    CHECK(sp.K.lo <= sp.K.hi);
  }

  TEST_CASE("eigenvector residuals vanish") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    IntervalMatrix dg0 = sh_dg0(Interval(0.2));
    for (int j = 0; j < 4; ++j) {
      for (int r = 0; r < 4; ++r) {
        ComplexInterval resid{};
        for (int c = 0; c < 4; ++c) resid += dg0(r, c) * sp.Vhat(c, j);
        resid -= sp.mu[j] * sp.Vhat(r, j);
        CHECK(resid.contains_zero());
      }
    }
  }

  TEST_CASE("inverse enclosures certify the identity") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    for (auto [A, B] : {std::pair{&sp.Vhat, &sp.Vhat_inv},
                        std::pair{&sp.Vcheck, &sp.Vcheck_inv}}) {
      IntervalMatrix P = (*A) * (*B);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          CHECK(P(r, c).re.contains(r == c ? 1.0 : 0.0));
          CHECK(P(r, c).im.contains_zero());
        }
    }
  }

  TEST_CASE("rescaled basis is proportional to the raw one: (S Vhat)_j = mu_j^2 Vcheck_j") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    IntervalMatrix SV = sp.S * sp.Vhat;
    for (int j = 0; j < 4; ++j) {
      ComplexInterval m2 = sp.mu[j] * sp.mu[j];
      for (int r = 0; r < 4; ++r) {
        ComplexInterval resid = SV(r, j) - m2 * sp.Vcheck(r, j);
        CHECK(resid.contains_zero());
      }
    }
  }

  TEST_CASE("transformed linearization is Hamiltonian: (J B)^* = J B") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    IntervalMatrix JB = sp.J * sp.B_infty;
    IntervalMatrix H = JB - adjoint(JB);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) CHECK(H(r, c).contains_zero());
  }

  TEST_CASE("stable and unstable eigenplanes are Lagrangian in the rescaled frame") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    for (int base : {0, 2}) {
      ComplexInterval form{};
      // omega(v, w) = v^T J w for the two columns of one pair (bilinear,
      // not sesquilinear, since the subspace is complex-linear).
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          form += sp.Vcheck(r, base) * sp.J(r, c) * sp.Vcheck(c, base + 1);
      CHECK(form.contains_zero());
    }
  }

  TEST_CASE("symplectic change of variables is involutive in the expected sense") {
    IntervalMatrix S = make_S(), Sinv = make_Sinv();
    IntervalMatrix P = S * Sinv;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        CHECK(P(r, c).re.contains(r == c ? 1.0 : 0.0));
        CHECK(P(r, c).im.contains_zero());
      }
    IntervalMatrix J = make_J();
    IntervalMatrix JJ = J * J;
    for (int r = 0; r < 4; ++r) CHECK(JJ(r, r).re.contains(-1.0));
  }

  TEST_CASE("parameter must be positive") {
    CHECK_THROWS_AS(compute_spectrum(Interval(-0.1, 0.1)), Error);
    CHECK_THROWS_AS(compute_spectrum(Interval(0.0)), Error);
  }
}
