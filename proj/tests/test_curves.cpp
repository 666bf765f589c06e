#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pseudorot/curve.hpp"
#include "pseudorot/cf.hpp"

using namespace pseudorot;

namespace {

// exact circle-gap oracle for vertical lines under a rational rotation:
// the iterates of {x=0} under R_{p/q} sit at {j p/q}; pairwise disjoint iff
// all values are distinct, and the minimal gap is the minimal circular
// distance between them.
struct GapOracle {
    bool distinct;
    BigRat min_gap;
};

GapOracle vertical_gap_oracle(const BigRat& alpha, int Q) {
    std::vector<BigRat> xs;
    for (int j = 0; j < Q; ++j) xs.push_back(frac_rat(alpha * j));
    std::sort(xs.begin(), xs.end());
    bool distinct = true;
    BigRat min_gap(1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        BigRat gap = (i + 1 < xs.size()) ? BigRat(xs[i + 1] - xs[i]) : BigRat(xs[0] + 1 - xs[i]);
        if (gap == 0) distinct = false;
        if (gap < min_gap) min_gap = gap;
    }
    return {distinct, min_gap};
}

}  // namespace

TEST_CASE("curve basics: vertical, mapped, interpolation") {
    auto v = Curve::vertical(0.25, 33);
    CHECK(v.at(0.5).x == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.x_at_height(0.7) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.is_simple());

    auto img = v.mapped(rigid_rotation(BigRat(1, 3)));
    CHECK(img.at(0.3).x == doctest::Approx(0.25 + 1.0 / 3.0).epsilon(1e-14));

    double len = v.polyline_length();
    CHECK(len == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("curve_order on lifted curves") {
    auto a = Curve::vertical(0.0);
    auto b = Curve::vertical(0.3);
    CHECK(curve_order(a, b) == CurveOrder::Left);
    CHECK(curve_order(b, a) == CurveOrder::Right);
    CHECK(curve_order(a, a) == CurveOrder::Intersecting);

    // invariance under simultaneous deck shifts
    CHECK(curve_order(a.shifted(2.0), b.shifted(2.0)) == CurveOrder::Left);

    // lifted copies of the same annulus curve are ordered, not intersecting
    CHECK(curve_order(a, a.shifted(1.0)) == CurveOrder::Left);
}

TEST_CASE("is_q_good on rigid rotations matches the exact gap oracle") {
    // R_{1/2}: f^2(gamma) = gamma, so Q = 3 fails
    auto w = is_q_good(rigid_rotation(BigRat(1, 2)), Curve::vertical(0.0), 3);
    CHECK_FALSE(w.good);

    // Q = 2 is the plain Brouwer-curve test
    auto w2 = is_q_good(rigid_rotation(BigRat(1, 2)), Curve::vertical(0.0), 2);
    CHECK(w2.good);
    CHECK(w2.min_separation == doctest::Approx(0.5).epsilon(1e-12));

    std::mt19937_64 rng(3);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        long q = 5 + static_cast<long>(rng() % 400);
        long p = 1 + static_cast<long>(rng() % (q - 1));
        int Q = 2 + static_cast<int>(rng() % 12);
        BigRat alpha(p, q);
        auto oracle = vertical_gap_oracle(alpha, Q);
        auto got = is_q_good(rigid_rotation(alpha), Curve::vertical(0.0), Q);
        CHECK(got.good == oracle.distinct);
        if (oracle.distinct) {
            CHECK(got.min_separation ==
                  doctest::Approx(static_cast<double>(oracle.min_gap)).epsilon(1e-9));
        }
        ++checked;
    }
    CHECK(checked == 60);

    // monotonicity: Q-good implies Q'-good for smaller Q'
    BigRat alpha(13, 89);
    for (int Q = 6; Q >= 2; --Q) {
        auto wq = is_q_good(rigid_rotation(alpha), Curve::vertical(0.0), Q);
        CHECK(wq.good);
    }
}

TEST_CASE("lifted Brouwer curve is disjoint from nearby deck translates") {
    // T^k F(gamma) vs gamma for |k| <= 3 for a rigid rotation with small angle
    auto f = rigid_rotation(BigRat(1, 97));
    auto gamma = Curve::vertical(0.0);
    auto fg = gamma.mapped(f);
    for (int k = -3; k <= 3; ++k) {
        CHECK(lifted_curve_distance(gamma, fg.shifted(k)) > 1e-7);
    }
}

TEST_CASE("find_brouwer_curve") {
    // rigid rotation: the first phase returns a vertical line
    auto rn = RotationNumber::from_quotients({{5, 1, 3, 1, 1}});
    auto f = rigid_rotation(rn.representative());
    BrouwerSearchOptions opts;
    opts.Q = static_cast<int>(rn.convergent(2).q);
    auto curve = find_brouwer_curve(f, opts);
    double x0 = curve.samples().front().x;
    for (const auto& p : curve.samples()) CHECK(p.x == doctest::Approx(x0).epsilon(1e-12));
    CHECK(is_q_good(f, curve, opts.Q).good);

    // conjugated rotation: the conjugated vertical line is Q-good; the search
    // must find a curve with at least comparable separation
    auto bump = periodic_bump_array(0.3, 0.5, 0.05, 0.8, 5);
    auto g = compose(bump, compose(f, bump.inverse()));
    BrouwerSearchOptions o2;
    o2.Q = 5;
    auto found = find_brouwer_curve(g, o2);
    auto w_found = is_q_good(g, found, o2.Q);
    CHECK(w_found.good);
    auto exact = Curve::vertical(0.1).mapped(bump);
    auto w_exact = is_q_good(g, exact, o2.Q);
    CHECK(w_exact.good);

    // no 3-good curve exists for R_{1/2}
    BrouwerSearchOptions o3;
    o3.Q = 3;
    o3.vertical_candidates = 8;
    o3.graph_attempts = 4;
    CHECK_THROWS_AS(find_brouwer_curve(rigid_rotation(BigRat(1, 2)), o3), Error);
}

TEST_CASE("region membership and area") {
    Region r(Curve::vertical(0.2), Curve::vertical(0.5));
    CHECK(r.contains({0.3, 0.5}));
    CHECK(r.contains({0.3 + 2.0, 0.5}));  // deck reduction
    CHECK_FALSE(r.contains({0.7, 0.5}));
    CHECK(r.area() == doctest::Approx(0.3).epsilon(1e-12));

    // tolerance picks up boundary points
    CHECK(r.contains({0.2, 0.4}, 1e-9));

    // region between a slanted graph curve and its rotate
    std::vector<double> off(33);
    for (int i = 0; i < 33; ++i) {
        double y = i / 32.0;
        off[static_cast<std::size_t>(i)] = 0.1 * y * (1.0 - y);
    }
    Region s(Curve::graph(0.0, off), Curve::graph(0.25, off));
    CHECK(s.area() == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(s.contains({0.1, 0.3}));
}

TEST_CASE("orthogonalization pins the end tangents") {
    std::vector<double> off(65);
    for (int i = 0; i < 65; ++i) {
        double y = i / 64.0;
        off[static_cast<std::size_t>(i)] = 0.15 * std::sin(M_PI * y) + 0.08 * y;
    }
    auto c = Curve::graph(0.4, off);
    CHECK(c.boundary_angle_defect() > 0.05);
    auto o = c.orthogonalized(0.08);
    CHECK(o.boundary_angle_defect() < 0.05);
    CHECK(o.boundary_angle_defect() < 0.1 * c.boundary_angle_defect());
    CHECK(annulus_distance(o.at(0.0), c.at(0.0)) < 1e-12);
    CHECK(annulus_distance(o.at(1.0), c.at(1.0)) < 1e-12);
}

TEST_CASE("curve CSV round trip") {
    auto c = Curve::graph(0.3, {0.0, 0.02, 0.05, 0.01, 0.0});
    auto text = curve_to_csv(c);
    auto back = curve_from_csv(text);
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        CHECK((back.samples()[i] - c.samples()[i]).norm() == 0.0);
}
