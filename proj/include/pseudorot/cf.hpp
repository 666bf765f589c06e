#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pseudorot/errors.hpp"

namespace pseudorot {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt num(const BigRat& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const BigRat& r) { return boost::multiprecision::denominator(r); }

BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor_rat(const BigRat& x);
// Fractional part {x} in [0,1).
BigRat frac_rat(const BigRat& x);
// Distance of x to the nearest integer, in [0, 1/2].
BigRat circle_norm_rat(const BigRat& x);

// Partial quotients a_1, a_2, ... of a continued fraction; a_0 is fixed to 0,
// so the represented value lies in (0,1).
struct PartialQuotients {
    std::vector<BigInt> terms;

    std::size_t size() const { return terms.size(); }
    void validate() const;  // every stored a_k >= 1
};

struct Convergent {
    int n = 0;
    BigInt p;
    BigInt q;

    BigRat ratio() const { return BigRat(p, q); }
};

// Growth function P: N -> Q_+ used by the arithmetic conditions. Exact
// rational evaluation so the comparisons q_{k} > P(q_{k-1}) stay exact.
using GrowthFn = std::function<BigRat(const BigInt&)>;

// q_0 = 1, q_1 = a_1, q_{k+2} = q_k + q_{k+1} a_{k+2};
// p_0 = 0, p_1 = 1,   p_{k+2} = p_k + p_{k+1} a_{k+2}.
// Returns convergents (p_k, q_k) for k = 0..n. Throws "insufficient-terms"
// when the quotient list is too short.
std::vector<Convergent> convergents(const PartialQuotients& pq, std::size_t n);

// Euclidean/Gauss-map expansion of an exact rational in (0,1). The final
// quotient list reproduces x exactly.
PartialQuotients cf_expand(const BigRat& x);

// Exact value of a finite continued fraction [0; a_1, ..., a_m].
BigRat cf_value(const PartialQuotients& pq);

struct GaussStep {
    BigRat alpha;  // alpha_k = G^k(x)
    BigRat beta;   // beta_k = prod_{i<=k} alpha_i
};

// Orbit of the Gauss map G(x) = 1/x - floor(1/x), G(0) = 0, together with the
// products beta_k. Index 0 holds (alpha_0, beta_0) = (x, x).
std::vector<GaussStep> gauss_orbit(const BigRat& x, std::size_t n);

// A rotation number represented through a finite quotient prefix. `exact` is
// set when the stored quotients reproduce the value exactly (rational input);
// otherwise the value is only known to lie in the stored bracket.
class RotationNumber {
public:
    static RotationNumber from_rational(const BigRat& value);
    static RotationNumber from_quotients(PartialQuotients pq);

    const PartialQuotients& quotients() const { return pq_; }
    const std::vector<Convergent>& convs() const { return convergents_; }
    const Convergent& convergent(std::size_t k) const;
    std::size_t order() const { return convergents_.empty() ? 0 : convergents_.size() - 1; }

    // The rational all downstream numerics consume: the value of the full
    // stored prefix, i.e. p_N/q_N for the longest cached convergent.
    BigRat representative() const { return value_; }
    bool exact() const { return exact_; }

    // Exact bracket containing the represented number. For exact rationals
    // both ends equal the value; otherwise the bracket is the interval
    // between the last two convergents (width 1/(q_{N-1} q_N)).
    BigRat lower() const { return lo_; }
    BigRat upper() const { return hi_; }
    BigRat bracket_width() const { return hi_ - lo_; }

    // beta_k = |q_k alpha - p_k| evaluated on the representative.
    BigRat beta(std::size_t k) const;

private:
    PartialQuotients pq_;
    std::vector<Convergent> convergents_;
    BigRat value_;
    BigRat lo_, hi_;
    bool exact_ = false;
};

// True iff q_n > P(q_{n-1}), q_{n+1} > P(q_n) and q_{n+2} > P(q_{n+1}),
// all comparisons exact. Requires convergents up to n+2.
bool check_cp_membership(const RotationNumber& rn, const GrowthFn& P, int n);

// Extends `prefix` (length <= n-1) so that the three inequalities of
// check_cp_membership hold at the odd index n: each new quotient a_k for
// k <= n+2 is the minimal positive integer with q_k > P(q_{k-1}); the tail is
// padded with 1's until at least `total_terms` quotients are present.
RotationNumber synthesize_alpha(const GrowthFn& P, int n,
                                const PartialQuotients& prefix = {},
                                std::size_t total_terms = 0);

std::string quotients_to_json(const PartialQuotients& pq);
PartialQuotients quotients_from_json(const std::string& text);

}  // namespace pseudorot
