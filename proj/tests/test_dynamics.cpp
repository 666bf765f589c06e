#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pseudorot/dynamics.hpp"

using namespace pseudorot;

TEST_CASE("rotation number estimate: rigid rotations are exact for any N") {
    for (long N : {1L, 7L, 100L}) {
        auto est = rotation_number_estimate(rigid_rotation(BigRat(3, 7)), N, 5);
        CHECK(est.value == doctest::Approx(3.0 / 7.0).epsilon(1e-15));
        CHECK(est.span <= 1e-15);
    }
    auto id = rotation_number_estimate(identity_map(), 50, 4);
    CHECK(id.value == 0.0);
}

TEST_CASE("rotation number estimate is conjugation invariant within its bound") {
    auto rn = RotationNumber::from_quotients({{2, 3, 1, 4, 2, 1}});
    AkSchedule sched;
    auto c1 = rn.convergent(1), c2 = rn.convergent(2);
    sched.stages.push_back({c1.p, c1.q, 0.35, 0.0, 0.7, 0.15});
    sched.stages.push_back({c2.p, c2.q, 0.62, 0.0, 0.4, 0.48});
    auto ak = ak_build(sched, rn);
    auto est = rotation_number_estimate(ak.map, 10000, 8);
    double target = static_cast<double>(rn.representative());
    CHECK(std::fabs(est.value - target) < 1e-3);
    CHECK(est.error_bound >= est.span);
}

TEST_CASE("A_0 formula and monotonicity") {
    CHECK(bound_A0(0.25, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    double prev = 0.0;
    for (double s : {0.01, 0.05, 0.1, 0.2}) {
        double v = bound_A0(s, 1.0);
        CHECK(v > prev);
        prev = v;
    }
    prev = 0.0;
    for (double K : {1.0, 2.0, 5.0}) {
        double v = bound_A0(0.1, K);
        CHECK(v > prev);
        prev = v;
    }
    CHECK(bound_A0(1e-12, 3.0) < 1e-5);  // s -> 0 limit
    CHECK_THROWS_AS(bound_A0(0.6, 1.0), Error);
}

TEST_CASE("A_r formula") {
    // r=1, c_1=1, s=1/16, K=1: (1/16)^{1/4} (1+2) = 3/2
    CHECK(bound_Ar(1, 1.0 / 16.0, 1.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(bound_Ar(1, 1e-30, 1.0) < 1e-6);
    CHECK(bound_Ar(2, 0.1, 3.0) > bound_Ar(2, 0.1, 2.0));
    BoundConfig cfg;
    cfg.c_r[2] = 0.5;
    CHECK(bound_Ar(2, 0.25, 1.0, cfg) == doctest::Approx(0.5 * std::pow(0.25, 1.0 / 6.0) * 3.0));
    CHECK_THROWS_AS(bound_Ar(1, 0.25, 1.0, cfg), Error);  // c_1 not configured explicitly
    BoundConfig bad;
    bad.c_r[1] = -1.0;
    CHECK_THROWS_AS(bound_Ar(1, 0.25, 1.0, bad), Error);
}

TEST_CASE("epsilon0") {
    CHECK(epsilon0(1.0) == doctest::Approx(1.0 / 36.0).epsilon(1e-15));
    CHECK(epsilon0(1e-6) < 1e-10);  // K -> infinity
    for (double kinv : {1.0, 0.5, 0.1, 1e-3}) CHECK(epsilon0(kinv) < 0.5);
    // definition: largest s with A_0(s, K) <= 1/2
    double s = epsilon0(0.5);
    CHECK(bound_A0(s, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("epsilon1") {
    // t = 1/2, K = 2: min((1/(4*9))^2, (1/(2*9))^2 / 2)
    double expect = std::min(std::pow(1.0 / 36.0, 2), std::pow(1.0 / 18.0, 2) / 2.0);
    CHECK(epsilon1(0.5, 0.5) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(epsilon1(0.5, 1e-4) < 1e-8);  // K -> infinity
    // quoted inequality: epsilon1(t, 1/K) < epsilon0(K^{-1/t})
    for (double t : {0.2, 0.5, 0.8}) {
        for (double kinv : {0.9, 0.5, 0.2}) {
            double Kt = std::pow(1.0 / kinv, 1.0 / t);
            CHECK(epsilon1(t, kinv) < epsilon0(1.0 / Kt));
        }
    }
    CHECK_THROWS_AS(epsilon1(0.5, 1.5), Error);
}

TEST_CASE("delta_min") {
    CHECK(delta_min(0.5, 0.5) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    // t -> 1^- tends to 1/2
    CHECK(delta_min(0.999999, 0.5) == doctest::Approx(0.5).epsilon(1e-4));
    // decreasing in 1/t (i.e. increasing in t)
    CHECK(delta_min(0.3, 0.5) < delta_min(0.6, 0.5));
    CHECK_THROWS_AS(delta_min(1.5, 0.5), Error);
}

TEST_CASE("verify_displacement") {
    // rigid rotation with small angle: displacement is exactly ||alpha||
    BigRat alpha(1, 1000);
    auto f = rigid_rotation(alpha);
    auto rep = verify_displacement(f, alpha, {64, 9});
    CHECK(rep.applicable);
    CHECK(rep.inf_disp == doctest::Approx(1e-3).epsilon(1e-12));
    if (rep.precond_alpha && rep.precond_gauss) {
        CHECK(rep.conclusion);
        CHECK(rep.inf_disp >= rep.delta);
    }

    auto id_rep = verify_displacement(identity_map(), BigRat(0), {16, 5});
    CHECK_FALSE(id_rep.applicable);
    CHECK(id_rep.inf_disp == 0.0);
}
