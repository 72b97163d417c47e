#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "rb/bundle.hpp"
#include "rb/conjwindow.hpp"
#include "rb/manifold.hpp"
#include "rb/spectrum.hpp"

using namespace rb;

namespace {

// The decay constants need a validated manifold; build it once for the suite.
struct Fixture {
  Spectrum sp;
  FieldSpec field;
  ManifoldParam man;
  DecayConstants dc;
  Fixture()
      : sp(compute_spectrum(Interval(0.2))),
        field(field_swift_hohenberg(Interval(0.2), Interval(1.6))) {
    EigenFrame fr = sh_frame(sp, Side::stable);
    std::vector<ComplexInterval> scalings{scale_for_norm(fr, 0, Interval(0.5)),
                                          scale_for_norm(fr, 1, Interval(0.5))};
    man = solve_manifold_coeffs(field, fr, 35, scalings);
    man.bounds = manifold_radii_bounds(man, sp);
    find_radius(man.bounds);
    dc = decay_constants(sp, man);
  }
};

const Fixture& fx() {
  static Fixture f;
  return f;
}

using mp = boost::multiprecision::cpp_bin_float_50;

}  // namespace

TEST_SUITE("conjwindow") {
  TEST_CASE("decay constants require a validated radius") {
    Spectrum sp = compute_spectrum(Interval(0.2));
    FieldSpec field = field_swift_hohenberg(Interval(0.2), Interval(1.6));
    EigenFrame fr = sh_frame(sp, Side::stable);
    std::vector<ComplexInterval> scalings{scale_for_norm(fr, 0, Interval(0.5)),
                                          scale_for_norm(fr, 1, Interval(0.5))};
    ManifoldParam man = solve_manifold_coeffs(field, fr, 8, scalings);
    CHECK_THROWS_WITH_AS(decay_constants(sp, man),
                         "manifold radius must be validated before the decay constants",
                         Error);
  }

  TEST_CASE("decay constants are consistent with their ingredients") {
    const DecayConstants& dc = fx().dc;
    // Two scaled directions of size 1/2 alone put the norm above one.
    CHECK(dc.P_norm.lo > 1.0);
    CHECK(dc.C_B.lo == fx().sp.re_mu_u.lo);
    CHECK(dc.C_B.hi == fx().sp.re_mu_u.hi);
    CHECK(dc.K.lo == fx().sp.K.lo);
    CHECK(dc.K_B.lo > 0.0);
  }

  TEST_CASE("window rate function against a high-precision evaluation") {
    const DecayConstants& dc = fx().dc;
    // Midpoints are members of their intervals, so the exact value of the
    // rate at the midpoints must land inside the interval evaluation.
    const mp K(dc.K.mid()), KB(dc.K_B.mid()), CB(dc.C_B.mid());
    for (double L : {20.0, 43.7, 50.0, 80.0}) {
      Interval tau = tau_at(dc, L);
      mp val = K * KB / CB * exp(-CB * mp(L));
      CHECK(val >= mp(tau.lo));
      CHECK(val <= mp(tau.hi));
      CHECK(tau.lo > 0.0);
    }
  }

  TEST_CASE("tail window length lands where the decay beats the threshold") {
    WindowResult res = find_L_minus(fx().dc, fx().sp);
    CHECK(res.found);
    CHECK(res.L >= 42.0);
    CHECK(res.L <= 52.0);
    CHECK(res.tau.hi < 1.0);
    CHECK(certainly_less(res.ratio, res.threshold));
    // First grid point wins: one step earlier must violate a condition.
    Interval before = tau_at(fx().dc, res.L - 0.1);
    if (before.hi < 1.0) {
      Interval ratio_before = before / (Interval(1.0) - before);
      CHECK(!certainly_less(ratio_before, res.threshold));
    }
    // The rate keeps improving beyond the certified length.
    CHECK(tau_at(fx().dc, res.L + 10.0).hi < res.tau.lo);
    // sigma radius is e^{-C_B L} of the certified length.
    mp ref = exp(-mp(fx().dc.C_B.mid()) * mp(res.L));
    CHECK(ref >= mp(res.sigma_radius.lo));
    CHECK(ref <= mp(res.sigma_radius.hi));
    // A grid cap below the certified length reports no window.
    WindowResult capped = find_L_minus(fx().dc, fx().sp, res.L - 1.0);
    CHECK(!capped.found);
  }

  TEST_CASE("matching data: Hermitian pairing, solve residual, singular value") {
    const Spectrum& sp = fx().sp;
    LPlusData lp = lplus_matrices(sp);
    CHECK(lp.sigma_min.lo > 0.0);
    // High-precision reference for the separation constant at this
    // parameter, computed from the closed-form eigenvector entries with a
    // 50-digit brute-force 2x2 eigensolve.
    const double sigma_ref = 1.2623818863948651;
    CHECK(lp.sigma_min.lo <= sigma_ref);
    CHECK(lp.sigma_min.hi >= sigma_ref);
    CHECK(lp.sigma_min.hi - lp.sigma_min.lo < 1e-10);
    // M1 is Hermitian by construction.
    IntervalMatrix herm = lp.M1 - adjoint(lp.M1);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(herm(r, c).contains_zero());
    // M2 solves Vs14 M2 = Vu14.
    const std::vector<int> r14{0, 3}, cs{0, 1}, cu{2, 3};
    IntervalMatrix Vs14 = take_cols(take_rows(sp.Vcheck, r14), cs);
    IntervalMatrix Vu14 = take_cols(take_rows(sp.Vcheck, r14), cu);
    IntervalMatrix resid = Vs14 * lp.M2 - Vu14;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(resid(r, c).contains_zero());
    // The singular value bound is dominated by the norm product.
    CHECK(lp.sigma_min.hi <= (lp.nM2 * lp.nM1).hi + 1e-12);
  }

  TEST_CASE("matching inequality error paths") {
    const Spectrum& sp = fx().sp;
    const DecayConstants& dc = fx().dc;
    LPlusData lp = lplus_matrices(sp);
    std::vector<ComplexInterval> beta{ComplexInterval(0.3, 0.1),
                                      ComplexInterval(-0.2, 0.05)};
    std::vector<ComplexInterval> gamma{ComplexInterval(1.0, 0.0),
                                       ComplexInterval(0.0, 0.5)};
    CHECK_THROWS_WITH_AS(check_L_plus(sp, dc, lp, 0.1, beta, gamma),
                         "L too small", Error);
    // Just past the tau < 1 threshold the roughness correction still
    // overwhelms the frame conditioning, which asks for a longer window.
    double L1 = 0.1;
    while (!(tau_at(dc, L1).hi < 1.0)) L1 += 0.1;
    CHECK_THROWS_WITH_AS(check_L_plus(sp, dc, lp, L1, beta, gamma),
                         "increase L", Error);
    std::vector<ComplexInterval> gamma0{ComplexInterval(0.0, 0.0),
                                        ComplexInterval(0.0, 0.0)};
    CHECK_THROWS_WITH_AS(check_L_plus(sp, dc, lp, 60.0, beta, gamma0),
                         "gamma_tilde must be nonzero", Error);
    CHECK_THROWS_AS(check_L_plus(sp, dc, lp, 60.0, {ComplexInterval(1.0)}, gamma),
                    Error);
  }

  TEST_CASE("matching inequality report at a long window") {
    const Spectrum& sp = fx().sp;
    const DecayConstants& dc = fx().dc;
    LPlusData lp = lplus_matrices(sp);
    std::vector<ComplexInterval> beta{ComplexInterval(0.3, 0.1),
                                      ComplexInterval(-0.2, 0.05)};
    std::vector<ComplexInterval> gamma{ComplexInterval(1.0, 0.0),
                                       ComplexInterval(0.0, 0.5)};
    LPlusReport rep = check_L_plus(sp, dc, lp, 60.0, beta, gamma);
    CHECK(rep.L == 60.0);
    CHECK(rep.tau.hi < 1e-2);
    CHECK(overlap(rep.tau, tau_at(dc, 60.0)));
    // eps0 = tau/(1-tau) times the eigenvector norm.
    Interval eps0 = (rep.tau / (Interval(1.0) - rep.tau)) * sp.evec_norm;
    CHECK(overlap(eps0, rep.eps0));
    // eps_beta and eps_gamma carry |beta| and 1/|gamma| at the same decay.
    Interval b2 = sqrt(abs2(beta[0]) + abs2(beta[1]));
    Interval g2 = sqrt(abs2(gamma[0]) + abs2(gamma[1]));
    Interval decay = exp(dc.C_B * Interval(-60.0));
    CHECK(overlap(rep.eps_beta, decay * b2));
    CHECK(overlap(rep.eps_gamma, decay / g2));
    CHECK(rep.lhs.lo == lp.sigma_min.lo);
    CHECK(rep.rhs.lo > 0.0);
    // Lengthening the window can only shrink the perturbation budget.
    LPlusReport far = check_L_plus(sp, dc, lp, 80.0, beta, gamma);
    CHECK(far.rhs.hi < rep.rhs.hi);
    CHECK(far.ok == (far.rhs.hi < far.lhs.lo));
  }

  TEST_CASE("frame coordinates at the base point recover the eigenbasis") {
    const Spectrum& sp = fx().sp;
    FieldSpec field = field_swift_hohenberg(Interval(0.2), Interval(1.6));
    EigenFrame fr = sh_frame(sp, Side::stable);
    std::vector<ComplexInterval> scalings{scale_for_norm(fr, 0, Interval(0.5)),
                                          scale_for_norm(fr, 1, Interval(0.5))};
    ManifoldParam man = solve_manifold_coeffs(field, fr, 6, scalings);
    BundleFrame bf = solve_bundle_coeffs(field, man);
    std::vector<ComplexInterval> sigma0{ComplexInterval(0.0, 0.0),
                                        ComplexInterval(0.0, 0.0)};
    // u = S * (third frame column at the base point): coordinates are e_3.
    std::vector<ComplexInterval> u(4);
    for (int i = 0; i < 4; ++i) {
      ComplexInterval s{};
      for (int k = 0; k < 4; ++k) s += sp.S(i, k) * fr.V(k, 2);
      u[i] = s;
    }
    std::vector<ComplexInterval> c =
        frame_coordinates(sp, bf.W, sigma0, u, Interval(1.0));
    REQUIRE(c.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(c[i].contains(i == 2 ? 1.0 : 0.0, 0.0));
      CHECK(abs(c[i]).hi <= (i == 2 ? 1.0 + 1e-10 : 1e-10));
    }
    CHECK_THROWS_AS(frame_coordinates(sp, man.P, sigma0, u, Interval(1.0)), Error);
    CHECK_THROWS_AS(frame_coordinates(sp, bf.W, sigma0,
                                      {ComplexInterval(1.0)}, Interval(1.0)),
                    Error);
  }
}
