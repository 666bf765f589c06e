#include "pseudorot/cf.hpp"

#include <nlohmann/json.hpp>

namespace pseudorot {

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

BigInt floor_rat(const BigRat& x) { return floor_div(num(x), den(x)); }

BigRat frac_rat(const BigRat& x) { return x - BigRat(floor_rat(x)); }

BigRat circle_norm_rat(const BigRat& x) {
    BigRat f = frac_rat(x);
    BigRat other = 1 - f;
    return f < other ? f : other;
}

void PartialQuotients::validate() const {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i] < 1)
            fail("invalid-quotient", "a_" + std::to_string(i + 1) + " must be >= 1");
    }
}

std::vector<Convergent> convergents(const PartialQuotients& pq, std::size_t n) {
    if (pq.size() < n)
        fail("insufficient-terms", "need " + std::to_string(n) + " quotients, have " +
                                       std::to_string(pq.size()));
    std::vector<Convergent> out;
    out.reserve(n + 1);
    out.push_back({0, 0, 1});
    if (n == 0) return out;
    out.push_back({1, 1, pq.terms[0]});
    for (std::size_t k = 2; k <= n; ++k) {
        const BigInt& a = pq.terms[k - 1];
        out.push_back({static_cast<int>(k), out[k - 2].p + out[k - 1].p * a,
                       out[k - 2].q + out[k - 1].q * a});
    }
    return out;
}

PartialQuotients cf_expand(const BigRat& x) {
    if (!(x > 0 && x < 1)) fail("domain", "cf_expand requires x in (0,1)");
    PartialQuotients pq;
    // Euclidean algorithm on (p, q) with x = p/q.
    BigInt p = num(x), q = den(x);
    // Invariant: current value is p/q in (0,1), i.e. 0 < p < q.
    while (p != 0) {
        BigInt a = q / p;
        pq.terms.push_back(a);
        BigInt r = q % p;
        q = p;
        p = r;
    }
    return pq;
}

BigRat cf_value(const PartialQuotients& pq) {
    if (pq.size() == 0) fail("domain", "empty quotient list has no value in (0,1)");
    auto cs = convergents(pq, pq.size());
    return cs.back().ratio();
}

std::vector<GaussStep> gauss_orbit(const BigRat& x, std::size_t n) {
    if (!(x >= 0 && x < 1)) fail("domain", "gauss_orbit requires x in [0,1)");
    std::vector<GaussStep> out;
    out.reserve(n + 1);
    BigRat a = x;
    BigRat beta = x;
    out.push_back({a, beta});
    for (std::size_t k = 1; k <= n; ++k) {
        if (a == 0) {
            out.push_back({BigRat(0), BigRat(0)});
            continue;
        }
        BigRat inv = 1 / a;
        a = inv - BigRat(floor_rat(inv));
        beta *= a;
        out.push_back({a, beta});
    }
    return out;
}

RotationNumber RotationNumber::from_rational(const BigRat& value) {
    RotationNumber rn;
    rn.pq_ = cf_expand(value);
    rn.convergents_ = convergents(rn.pq_, rn.pq_.size());
    rn.value_ = value;
    rn.lo_ = rn.hi_ = value;
    rn.exact_ = true;
    return rn;
}

RotationNumber RotationNumber::from_quotients(PartialQuotients pq) {
    pq.validate();
    if (pq.size() < 2) fail("insufficient-terms", "need at least 2 quotients for a bracket");
    RotationNumber rn;
    rn.pq_ = std::move(pq);
    rn.convergents_ = convergents(rn.pq_, rn.pq_.size());
    rn.value_ = rn.convergents_.back().ratio();
    BigRat prev = rn.convergents_[rn.convergents_.size() - 2].ratio();
    rn.lo_ = rn.value_ < prev ? rn.value_ : prev;
    rn.hi_ = rn.value_ < prev ? prev : rn.value_;
    rn.exact_ = false;
    return rn;
}

const Convergent& RotationNumber::convergent(std::size_t k) const {
    if (k >= convergents_.size())
        fail("insufficient-terms",
             "convergent index " + std::to_string(k) + " beyond stored prefix");
    return convergents_[k];
}

BigRat RotationNumber::beta(std::size_t k) const {
    const Convergent& c = convergent(k);
    BigRat d = BigRat(c.q) * value_ - BigRat(c.p);
    return d < 0 ? BigRat(-d) : d;
}

bool check_cp_membership(const RotationNumber& rn, const GrowthFn& P, int n) {
    if (n < 1 || n % 2 == 0) fail("domain", "C_P membership index n must be odd and positive");
    const auto k = static_cast<std::size_t>(n);
    if (rn.order() < k + 2)
        fail("insufficient-terms", "need convergents up to n+2 = " + std::to_string(n + 2));
    for (std::size_t j = k; j <= k + 2; ++j) {
        if (!(BigRat(rn.convergent(j).q) > P(rn.convergent(j - 1).q))) return false;
    }
    return true;
}

RotationNumber synthesize_alpha(const GrowthFn& P, int n, const PartialQuotients& prefix,
                                std::size_t total_terms) {
    if (n < 1 || n % 2 == 0) fail("domain", "target index n must be odd and positive");
    prefix.validate();
    if (prefix.size() > static_cast<std::size_t>(n) - 1)
        fail("domain", "prefix longer than n-1");

    PartialQuotients pq = prefix;
    BigInt q_prev2 = 1;  // q_{k-2}
    BigInt q_prev = 1;   // q_{k-1}; recompute from prefix below
    {
        auto cs = convergents(pq, pq.size());
        if (cs.size() >= 2) {
            q_prev2 = cs[cs.size() - 2].q;
            q_prev = cs[cs.size() - 1].q;
        } else {
            // empty prefix: q_{-1} plays no role; seed with q_0 = 1.
            q_prev2 = 0;
            q_prev = 1;
        }
    }
    // Indices are 1-based: choosing a_k updates q_k = q_{k-2} + a_k q_{k-1},
    // with the convention q_0 = 1 (and the k = 1 step using q_{-1} = 0).
    for (std::size_t k = pq.size() + 1; k <= static_cast<std::size_t>(n) + 2; ++k) {
        BigRat bound = P(q_prev);
        BigInt a = 1;
        BigRat q_with = BigRat(q_prev2) + BigRat(q_prev);
        if (q_with <= bound) {
            // minimal a with q_{k-2} + a q_{k-1} > bound
            BigRat need = (bound - BigRat(q_prev2)) / BigRat(q_prev);
            a = floor_rat(need) + 1;
            if (a < 1) a = 1;
        }
        pq.terms.push_back(a);
        BigInt q_new = q_prev2 + a * q_prev;
        q_prev2 = q_prev;
        q_prev = q_new;
    }
    while (pq.size() < total_terms) {
        pq.terms.push_back(1);
    }
    return RotationNumber::from_quotients(std::move(pq));
}

std::string quotients_to_json(const PartialQuotients& pq) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& t : pq.terms) arr.push_back(t.str());
    return arr.dump();
}

PartialQuotients quotients_from_json(const std::string& text) {
    nlohmann::json arr = nlohmann::json::parse(text);
    if (!arr.is_array()) fail("parse", "quotients JSON must be an array of decimal strings");
    PartialQuotients pq;
    for (const auto& v : arr) {
        if (v.is_string())
            pq.terms.emplace_back(v.get<std::string>());
        else if (v.is_number_integer())
            pq.terms.emplace_back(v.get<long long>());
        else
            fail("parse", "quotient entries must be decimal strings or integers");
    }
    pq.validate();
    return pq;
}

}  // namespace pseudorot
