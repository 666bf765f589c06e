#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pseudorot/cf.hpp"

using namespace pseudorot;

namespace {

// Independent oracle: plain Euclidean algorithm on machine integers.
std::vector<long long> euclid_cf(long long p, long long q) {
    std::vector<long long> out;
    while (p != 0) {
        out.push_back(q / p);
        long long r = q % p;
        q = p;
        p = r;
    }
    return out;
}

PartialQuotients ones(std::size_t n) {
    PartialQuotients pq;
    pq.terms.assign(n, BigInt(1));
    return pq;
}

GrowthFn power_growth(long long c, int e) {
    return [c, e](const BigInt& q) {
        BigInt v = c;
        for (int i = 0; i < e; ++i) v *= q;
        return BigRat(v);
    };
}

}  // namespace

TEST_CASE("cf_expand matches the Euclidean oracle") {
    CHECK(cf_expand(BigRat(1, 2)).terms == std::vector<BigInt>{2});
    // frozen from euclid_cf(5,7) and euclid_cf(3,10)
    CHECK(cf_expand(BigRat(5, 7)).terms == std::vector<BigInt>({1, 2, 2}));
    CHECK(cf_expand(BigRat(3, 10)).terms == std::vector<BigInt>({3, 3}));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        long long q = 2 + static_cast<long long>(rng() % 100000);
        long long p = 1 + static_cast<long long>(rng() % (q - 1));
        auto oracle = euclid_cf(p, q);
        auto got = cf_expand(BigRat(p, q));
        REQUIRE(got.size() == oracle.size());
        for (std::size_t i = 0; i < oracle.size(); ++i) CHECK(got.terms[i] == oracle[i]);
        // round trip: final convergent reproduces the input exactly
        CHECK(cf_value(got) == BigRat(p, q));
    }
}

TEST_CASE("cf_expand rejects values outside (0,1)") {
    CHECK_THROWS_AS(cf_expand(BigRat(0)), Error);
    CHECK_THROWS_AS(cf_expand(BigRat(1)), Error);
    CHECK_THROWS_AS(cf_expand(BigRat(3, 2)), Error);
}

TEST_CASE("convergents satisfy the recurrences and determinant identity") {
    // all-ones quotients give the Fibonacci denominators (hand recurrence)
    auto cs = convergents(ones(8), 8);
    std::vector<long long> fib{1, 1, 2, 3, 5, 8, 13, 21, 34};
    for (std::size_t k = 0; k < fib.size(); ++k) CHECK(cs[k].q == fib[k]);

    PartialQuotients half;
    half.terms = {2};
    auto c1 = convergents(half, 1);
    CHECK(c1[1].p == 1);
    CHECK(c1[1].q == 2);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        PartialQuotients pq;
        for (int i = 0; i < 12; ++i) pq.terms.push_back(BigInt(1 + rng() % 1000));
        auto cv = convergents(pq, 12);
        for (std::size_t k = 0; k + 1 < cv.size(); ++k) {
            BigInt det = cv[k + 1].p * cv[k].q - cv[k].p * cv[k + 1].q;
            CHECK(det == ((k % 2 == 0) ? 1 : -1));
            CHECK(boost::multiprecision::gcd(cv[k + 1].p, cv[k + 1].q) == 1);
        }
    }

    CHECK_THROWS_AS(convergents(half, 5), Error);
}

TEST_CASE("gauss_orbit: exact values, beta products and the sign identity") {
    auto orb = gauss_orbit(BigRat(1, 4), 1);
    CHECK(orb[1].alpha == 0);  // 1/x integer

    orb = gauss_orbit(BigRat(2, 7), 1);
    CHECK(orb[1].alpha == BigRat(1, 2));  // 7/2 = 3 + 1/2

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        long long q = 50 + static_cast<long long>(rng() % 5000);
        long long p = 1 + static_cast<long long>(rng() % (q - 1));
        BigRat x(p, q);
        auto pq = cf_expand(x);
        std::size_t m = pq.size();
        auto cv = convergents(pq, m);
        auto orbit = gauss_orbit(x, m);
        for (std::size_t k = 1; k < m; ++k) {
            // (-1)^k (q_k x - p_k) = beta_k > 0
            BigRat signedv = BigRat(cv[k].q) * x - BigRat(cv[k].p);
            if (k % 2 == 1) signedv = -signedv;
            CHECK(signedv == orbit[k].beta);
            CHECK(signedv > 0);
        }
    }
}

TEST_CASE("classical bounds on beta_k and alpha_k hold exactly") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        PartialQuotients pq;
        for (int i = 0; i < 14; ++i) pq.terms.push_back(BigInt(1 + rng() % 50));
        BigRat x = cf_value(pq);
        auto cv = convergents(pq, pq.size());
        auto orbit = gauss_orbit(x, pq.size());
        // strict versions are theorems away from the expansion tail
        for (std::size_t k = 1; k + 2 < pq.size(); ++k) {
            BigRat beta = orbit[k].beta;
            CHECK(BigRat(1, cv[k].q + cv[k + 1].q) < beta);
            CHECK(beta < BigRat(1, cv[k + 1].q));
            BigRat lo(cv[k].q, 2 * cv[k + 1].q);
            BigRat hi(2 * cv[k].q, cv[k + 1].q);
            CHECK(lo < orbit[k].alpha);
            CHECK(orbit[k].alpha < hi);
            if (k >= 2) {
                BigRat inv_a(1, pq.terms[k]);  // 1/q(alpha_k) = 1/a_{k+1}
                CHECK(lo < inv_a);
                CHECK(inv_a < hi);
            }
        }
        // Gauss-map estimates: G(alpha_k) < 2 q_{k+1}/q_{k+2} and, when the
        // bound is < 1, G(beta_{k-1}) < 2 q_{k-1} q_k / q_{k+1}.
        for (std::size_t k = 1; k + 2 < pq.size(); ++k) {
            CHECK(orbit[k + 1].alpha < BigRat(2 * cv[k + 1].q, cv[k + 2].q));
            BigRat bound(2 * cv[k - 1].q * cv[k].q, cv[k + 1].q);
            if (bound < 1) {
                BigRat inv = 1 / orbit[k - 1].beta;
                BigRat g = inv - BigRat(floor_rat(inv));
                CHECK(g < bound);
            }
        }
    }
}

TEST_CASE("RotationNumber bracket contains the value and shrinks") {
    PartialQuotients pq;
    pq.terms = {1, 2, 3, 4, 5, 6};
    auto rn = RotationNumber::from_quotients(pq);
    CHECK(rn.lower() <= rn.representative());
    CHECK(rn.representative() <= rn.upper());
    auto cs = rn.convs();
    BigRat width = rn.bracket_width();
    CHECK(width == BigRat(1, cs[cs.size() - 2].q * cs.back().q));

    PartialQuotients longer = pq;
    longer.terms.push_back(2);
    auto rn2 = RotationNumber::from_quotients(longer);
    CHECK(rn2.bracket_width() < width);
    CHECK(rn.lower() < rn2.representative());
    CHECK(rn2.representative() < rn.upper());

    auto exact = RotationNumber::from_rational(BigRat(5, 7));
    CHECK(exact.exact());
    CHECK(exact.bracket_width() == 0);
    CHECK(exact.beta(exact.order()) == 0);
}

TEST_CASE("check_cp_membership") {
    auto zero = [](const BigInt&) { return BigRat(0); };
    auto rn = RotationNumber::from_quotients(ones(12));
    CHECK(check_cp_membership(rn, zero, 3));
    CHECK(check_cp_membership(rn, zero, 7));

    // Fibonacci growth is sub-quadratic per step: q^2 beats it from n >= 3
    for (int n : {3, 5, 7}) CHECK_FALSE(check_cp_membership(rn, power_growth(1, 2), n));

    CHECK_THROWS_AS(check_cp_membership(rn, zero, 4), Error);   // even index
    CHECK_THROWS_AS(check_cp_membership(rn, zero, 11), Error);  // needs n+2
}

TEST_CASE("synthesize_alpha meets its constraints minimally") {
    auto zero = [](const BigInt&) { return BigRat(0); };
    auto rn = synthesize_alpha(zero, 3);
    for (const auto& t : rn.quotients().terms) CHECK(t == 1);

    PartialQuotients prefix;
    prefix.terms = {2};
    auto rn10 = synthesize_alpha(power_growth(10, 1), 3, prefix);
    CHECK(rn10.quotients().terms[0] == 2);
    CHECK(rn10.quotients().terms[1] == 10);  // q_2 = 1 + 2 a_2 > 20
    CHECK(rn10.convergent(2).q == 21);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 3 + 2 * static_cast<int>(rng() % 4);
        long long c = 1 + static_cast<long long>(rng() % 500);
        auto P = power_growth(c, 1 + static_cast<int>(rng() % 2));
        auto made = synthesize_alpha(P, n);
        CHECK(check_cp_membership(made, P, n));
        // minimality: one less on the chosen quotient breaks the bound
        for (int j = n; j <= n + 2; ++j) {
            const auto& cv = made.convs();
            BigInt a = made.quotients().terms[static_cast<std::size_t>(j) - 1];
            if (a == 1) continue;
            BigInt q_smaller = cv[static_cast<std::size_t>(j) - 2].q +
                               (a - 1) * cv[static_cast<std::size_t>(j) - 1].q;
            CHECK(BigRat(q_smaller) <= P(cv[static_cast<std::size_t>(j) - 1].q));
        }
    }

    CHECK_THROWS_AS(synthesize_alpha(zero, 4), Error);
    PartialQuotients toolong;
    toolong.terms = {1, 1, 1};
    CHECK_THROWS_AS(synthesize_alpha(zero, 3, toolong), Error);
}

TEST_CASE("quotient JSON round trip uses decimal strings") {
    PartialQuotients pq;
    pq.terms = {BigInt("123456789012345678901234567890"), BigInt(1), BigInt(42)};
    auto text = quotients_to_json(pq);
    CHECK(text.find("123456789012345678901234567890") != std::string::npos);
    auto back = quotients_from_json(text);
    CHECK(back.terms == pq.terms);
}
