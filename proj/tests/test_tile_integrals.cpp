#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include <string_view>

#include "core/tile_integrals.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace tilefield;
using namespace tftest;

namespace {
const QuadratureSpec kSpec{};
const QuadratureSpec kOracleSpec{1e-10, 1e-12, 400};
constexpr std::string_view kLetters = "ABCDEFGHIJKL";
}  // namespace

TEST_CASE("helper functions") {
    CHECK(helper_A(1.0, 1.0, 0.0, 0.0) == 0.0);  // the coincident case the guard prevents
    CHECK(helper_A(1.0, 2.0, kPi / 3.0, 0.5) ==
          doctest::Approx(std::sqrt(1.0 - 2.0 * 2.0 * std::cos(kPi / 3.0) + 4.0 + 0.25))
              .epsilon(1e-15));
    CHECK(helper_C(0.7, 0.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(helper_C(2.5, 2.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(helper_E(1.0, 2.0, 0.0) == doctest::Approx(0.942809041582063366).epsilon(1e-15));
    CHECK(helper_D(kPi) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(helper_B(2.0, kPi / 2.0, 0.3) == doctest::Approx(-(4.0 + 0.09)).epsilon(1e-15));
    const auto [fp, fm] = helper_Fpm(1.0, 2.0, 0.7, 0.4);
    const double a = helper_A(1.0, 2.0, 0.7, 0.4);
    const double s = std::sqrt(4.0 + 0.16);
    CHECK(fp == doctest::Approx((a + 1.0) / s).epsilon(1e-15));
    CHECK(fm == doctest::Approx((a - 1.0) / s).epsilon(1e-15));
    CHECK_THROWS_AS(helper_Fpm(1.0, 0.0, 0.3, 0.0), DomainError);
}

TEST_CASE("J matches its antiderivative and the quadrature oracle") {
    CanonicalArgs a{2.0, 0.5, 1.0, 0.0, kPi / 2.0, -1.0, 1.0};
    // symmetric z-interval: the integrand is odd in z'
    CHECK(std::fabs(integral_J(1.0, a)) < 1e-14);
    CHECK(std::fabs(defining_integral('J', 1.0, a, kOracleSpec)) < 1e-10);

    // frozen 25-digit reference for an asymmetric z-interval
    a.z_lo = -0.3;
    CHECK(integral_J(1.0, a) == doctest::Approx(0.0883980016172787358).epsilon(1e-13));
    CHECK(defining_integral('J', 1.0, a, kOracleSpec) ==
          doctest::Approx(0.0883980016172787358).epsilon(1e-9));
}

TEST_CASE("degenerate intervals give zero for every integral") {
    Rng rng(42);
    const CanonicalArgs a = random_args(rng);
    CanonicalArgs th0 = a;
    th0.th_hi = th0.th_lo;
    CanonicalArgs z0 = a;
    z0.z_hi = z0.z_lo;
    CanonicalArgs r0 = a;
    r0.r_hi = r0.r_lo;
    // each integral vanishes when its own integration domain collapses
    for (char w : {'A', 'D', 'E', 'G', 'I', 'J', 'C', 'K', 'L'}) {
        CAPTURE(w);
        CHECK(closed_integral(w, surface_value(w, th0, true), th0, kSpec) == 0.0);
    }
    for (char w : {'A', 'D', 'E', 'G', 'I', 'J', 'B', 'F', 'H'}) {
        CAPTURE(w);
        CHECK(closed_integral(w, surface_value(w, z0, true), z0, kSpec) == 0.0);
    }
    for (char w : {'B', 'F', 'H', 'C', 'K', 'L'}) {
        CAPTURE(w);
        CHECK(closed_integral(w, surface_value(w, r0, true), r0, kSpec) == 0.0);
    }
}

TEST_CASE("A on a symmetric z-interval vs the quadrature oracle") {
    CanonicalArgs a{1.4, 0.3, 0.9, 0.2, 1.1, -0.6, 0.6};
    const double closed = integral_A(0.9, a);
    const double truth = defining_integral('A', 0.9, a, kOracleSpec);
    CHECK(closed == doctest::Approx(truth).epsilon(1e-9));
}

TEST_CASE("C at the spec example vs 2D quadrature") {
    CanonicalArgs a{2.0, 1.0, 1.5, 0.2, 0.9, 0.0, 0.7};
    const double closed = integral_C(a, 0.7, kSpec);
    const double truth = defining_integral('C', 0.7, a, kOracleSpec);
    CHECK(std::fabs(closed - truth) <= 1e-8 * std::max(1.0, std::fabs(truth)));
}

TEST_CASE("H with a z-interval symmetric about zero vs its defining integral") {
    CanonicalArgs a{1.7, 0.4, 1.2, 0.0, 0.0, -0.8, 0.8};
    a.th_lo = 0.3;
    a.th_hi = 1.2;
    const double ts = 0.9;
    const double closed = integral_H(a, ts, kSpec);
    const double truth = defining_integral('H', ts, a, kOracleSpec);
    CHECK(closed == doctest::Approx(truth).epsilon(1e-9));
}

TEST_CASE("all twelve integrals vs their defining double integrals") {
    Rng rng(0x7a11ULL);
    for (int trial = 0; trial < 40; ++trial) {
        const CanonicalArgs a = random_args(rng);
        for (char w : kLetters) {
            for (bool hi : {false, true}) {
                CAPTURE(trial);
                CAPTURE(w);
                CAPTURE(hi);
                const double surf = surface_value(w, a, hi);
                const double closed = closed_integral(w, surf, a, kSpec);
                const double truth = defining_integral(w, surf, a, kOracleSpec);
                CHECK(std::fabs(closed - truth) <=
                      std::max(1e-8 * std::fabs(truth), 1e-11));
            }
        }
    }
}

TEST_CASE("interval additivity in each integration variable") {
    Rng rng(0xadd1ULL);
    const QuadratureSpec kSpec{1e-12, 1e-15, 400};  // headroom below the 1e-10 assertion
    for (int trial = 0; trial < 10; ++trial) {
        const CanonicalArgs a = random_args(rng);

        // split in theta
        const double tc = a.th_lo + 0.37 * (a.th_hi - a.th_lo);
        CanonicalArgs left = a, right = a;
        left.th_hi = tc;
        right.th_lo = tc;
        for (char w : {'A', 'E', 'I', 'C', 'K', 'L'}) {
            CAPTURE(trial);
            CAPTURE(w);
            const double surf = surface_value(w, a, true);
            const double whole = closed_integral(w, surf, a, kSpec);
            const double sum = closed_integral(w, surf, left, kSpec) +
                               closed_integral(w, surf, right, kSpec);
            CHECK(std::fabs(whole - sum) <= 1e-10 * std::max(1.0, std::fabs(whole)));
        }

        // split in z
        const double zc = a.z_lo + 0.61 * (a.z_hi - a.z_lo);
        CanonicalArgs low = a, up = a;
        low.z_hi = zc;
        up.z_lo = zc;
        for (char w : {'D', 'G', 'J', 'B', 'F', 'H'}) {
            CAPTURE(trial);
            CAPTURE(w);
            const double surf = surface_value(w, a, false);
            const double whole = closed_integral(w, surf, a, kSpec);
            const double sum =
                closed_integral(w, surf, low, kSpec) + closed_integral(w, surf, up, kSpec);
            CHECK(std::fabs(whole - sum) <= 1e-10 * std::max(1.0, std::fabs(whole)));
        }

        // split in r (affects the r-corner families)
        const double rc = a.r_lo + 0.43 * (a.r_hi - a.r_lo);
        if (std::fabs(rc - a.x) > 1e-3) {
            CanonicalArgs rin = a, rout = a;
            rin.r_hi = rc;
            rout.r_lo = rc;
            for (char w : {'B', 'F', 'L', 'C', 'H', 'K'}) {
                CAPTURE(trial);
                CAPTURE(w);
                const double surf = surface_value(w, a, true);
                const double whole = closed_integral(w, surf, a, kSpec);
                const double sum = closed_integral(w, surf, rin, kSpec) +
                                   closed_integral(w, surf, rout, kSpec);
                CHECK(std::fabs(whole - sum) <= 1e-10 * std::max(1.0, std::fabs(whole)));
            }
        }
    }
}

TEST_CASE("angular range spanning a 2*pi multiple (sign-flip splitting)") {
    Rng rng(0x5311ULL);
    for (int trial = 0; trial < 8; ++trial) {
        CanonicalArgs a = random_args(rng);
        // force the interval to straddle zero
        a.th_lo = -rng.uniform(0.3, 2.0);
        a.th_hi = rng.uniform(0.3, 2.0);
        if (std::fabs(a.z_lo) < 2e-3) a.z_lo -= 0.05;
        if (std::fabs(a.z_hi) < 2e-3) a.z_hi += 0.05;
        if (std::fabs(a.r_lo - a.x) < 2e-3) a.r_lo *= 0.9;
        if (std::fabs(a.r_hi - a.x) < 2e-3) a.r_hi *= 1.1;
        for (char w : kLetters) {
            CAPTURE(trial);
            CAPTURE(w);
            const double surf = surface_value(w, a, true);
            const double closed = closed_integral(w, surf, a, kSpec);
            const double truth = defining_integral(w, surf, a, kOracleSpec);
            CHECK(std::fabs(closed - truth) <= std::max(1e-8 * std::fabs(truth), 1e-10));
        }
    }
}

TEST_CASE("singularity guard") {
    const CanonicalPoint cp{0.0, 0.0, 0.0};

    SUBCASE("on-axis point is nudged radially") {
        CanonicalArgs a{0.0, 0.5, 1.0, 0.3, 1.0, 0.2, 0.8};
        const auto [g, rep] = singularity_guard(cp, a);
        CHECK(rep.triggered);
        CHECK(rep.condition == GuardCondition::x_zero);
        CHECK(g.x > 0.0);
        CHECK(g.x <= 10.0 * 1e-9 * std::max(a.r_hi, a.z_hi - a.z_lo) * 1.0000001);
    }
    SUBCASE("theta limit at a pi multiple with a zero z-limit nudges axially") {
        CanonicalArgs a{0.7, 0.5, 1.0, 0.0, 1.0, 0.0, 0.8};
        const auto [g, rep] = singularity_guard(cp, a);
        CHECK(rep.triggered);
        CHECK(rep.condition == GuardCondition::theta_npi_z0);
        CHECK(std::fabs(g.z_lo) > 0.0);
        CHECK(rep.nudge_applied.z != 0.0);
    }
    SUBCASE("theta limit at a pi multiple with a radial limit at x nudges radially") {
        CanonicalArgs a{1.0, 0.5, 1.0, kPi, 4.0, 0.2, 0.8};
        const auto [g, rep] = singularity_guard(cp, a);
        CHECK(rep.triggered);
        CHECK(rep.condition == GuardCondition::theta_npi_r_eq_x);
        CHECK(std::fabs(g.x - g.r_hi) > 0.0);
    }
    SUBCASE("zero inner radius is lifted") {
        CanonicalArgs a{1.5, 0.0, 1.0, 0.3, 1.0, 0.2, 0.8};
        const auto [g, rep] = singularity_guard(cp, a);
        CHECK(rep.triggered);
        CHECK(rep.condition == GuardCondition::r_zero);
        CHECK(g.r_lo > 0.0);
    }
    SUBCASE("generic interior point passes through") {
        CanonicalArgs a{0.7, 0.5, 1.0, 0.3, 1.0, 0.2, 0.8};
        const auto [g, rep] = singularity_guard(cp, a);
        CHECK_FALSE(rep.triggered);
        CHECK(g.x == a.x);
        CHECK(g.z_lo == a.z_lo);
    }
    SUBCASE("guarded evaluation never returns NaN or infinity") {
        // exact singular inputs, after guarding, through every integral
        const CanonicalArgs loci[] = {
            {0.0, 0.5, 1.0, 0.0, 1.2, 0.0, 0.8},     // axis + corner locus
            {0.75, 0.0, 0.75, 0.0, 2.0, 0.0, 0.5},   // r_lo = 0, r_hi = x, theta = 0, z = 0
            {1.0, 0.5, 1.0, -0.4, 0.4, 0.0, 0.8},    // interior 2*pi multiple, z-limit 0
            {1.0, 0.5, 1.0, kPi, 2.0 * kPi, -0.3, 0.0},
        };
        for (const auto& raw : loci) {
            const auto [a, rep] = singularity_guard(cp, raw);
            (void)rep;
            for (char w : kLetters) {
                CAPTURE(w);
                const double v = closed_integral(w, surface_value(w, a, true), a, kSpec) +
                                 closed_integral(w, surface_value(w, a, false), a, kSpec);
                CHECK(std::isfinite(v));
            }
        }
    }
}
