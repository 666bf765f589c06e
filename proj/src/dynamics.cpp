#include "pseudorot/dynamics.hpp"

#include <cmath>

namespace pseudorot {

namespace {

// fixed sample set spread over both boundary circles and the interior
std::vector<Vec2> estimator_samples(int n) {
    static const std::vector<Vec2> base{{0.0, 0.0},  {0.37, 0.0}, {0.0, 1.0},  {0.61, 1.0},
                                        {0.2, 0.5},  {0.73, 0.31}, {0.11, 0.82}, {0.5, 0.5},
                                        {0.29, 0.17}, {0.83, 0.66}, {0.47, 0.93}, {0.05, 0.4}};
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i) out.push_back(base[i % base.size()]);
    return out;
}

}  // namespace

RotationEstimate rotation_number_estimate(const AnnulusMap& f, long iterates, int samples) {
    if (iterates < 1) fail("domain", "estimator needs at least one iterate");
    if (samples < 1) fail("domain", "estimator needs at least one sample");
    auto pts = estimator_samples(samples);
    double mean = 0.0, lo = 1e300, hi = -1e300, maxstep = 0.0;
    for (const Vec2& start : pts) {
        Vec2 p = start;
        for (long k = 0; k < iterates; ++k) {
            Vec2 q = f.lift(p);
            maxstep = std::max(maxstep, std::fabs(q.x - p.x));
            p = q;
        }
        double avg = (p.x - start.x) / static_cast<double>(iterates);
        mean += avg;
        lo = std::min(lo, avg);
        hi = std::max(hi, avg);
    }
    mean /= static_cast<double>(pts.size());
    RotationEstimate est;
    est.value = wrap01(mean);
    est.iterates = iterates;
    est.samples = samples;
    est.span = hi - lo;
    est.error_bound = est.span + (1.0 + maxstep) / static_cast<double>(iterates);
    return est;
}

double lift_drift_estimate(const AnnulusMap& f, long iterates, int samples) {
    auto pts = estimator_samples(samples);
    double mean = 0.0;
    for (const Vec2& start : pts) {
        Vec2 p = start;
        for (long k = 0; k < iterates; ++k) p = f.lift(p);
        mean += (p.x - start.x) / static_cast<double>(iterates);
    }
    return mean / static_cast<double>(pts.size());
}

double BoundConfig::c(int r) const {
    auto it = c_r.find(r);
    if (it == c_r.end()) {
        if (!c_r.empty())
            fail("unconfigured-cr", "no c_" + std::to_string(r) + " in explicit configuration");
        return 1.0;  // documented default, not a theory value
    }
    return it->second;
}

void BoundConfig::validate() const {
    for (const auto& [r, v] : c_r)
        if (!(v > 0.0)) fail("config", "c_" + std::to_string(r) + " must be positive");
}

double bound_A0(double s, double K) {
    if (!(s > 0.0 && s < 0.5)) fail("domain", "A_0 needs s in (0, 1/2)");
    if (!(K >= 1.0)) fail("domain", "A_0 needs K >= 1");
    return (1.0 + 2.0 * K) * std::sqrt(s);
}

double bound_Ar(int r, double s, double K, const BoundConfig& cfg) {
    if (r < 1) fail("domain", "A_r needs r >= 1");
    if (!(s > 0.0)) fail("domain", "A_r needs s > 0");
    cfg.validate();
    double cr = cfg.c(r);
    return cr * std::pow(s, 1.0 / (2.0 * (r + 1))) * (1.0 + 2.0 * K);
}

double epsilon0(double K_inv) {
    if (!(K_inv > 0.0 && K_inv <= 1.0)) fail("domain", "epsilon0 needs K = 1/K_inv >= 1");
    double K = 1.0 / K_inv;
    double s = 1.0 / (2.0 * (1.0 + 2.0 * K));
    return std::min(s * s, 0.5 * (1.0 - 1e-12));
}

double epsilon1(double t, double K_inv) {
    if (!(t > 0.0 && t < 1.0)) fail("domain", "epsilon1 needs t in (0,1)");
    if (!(K_inv > 0.0 && K_inv < 1.0)) fail("domain", "epsilon1 needs K > 1");
    double K = 1.0 / K_inv;
    double Kt = std::pow(K, 1.0 / t);
    double first = 1.0 / (4.0 * (1.0 + 2.0 * Kt));
    first *= first;  // solves A_0(s, K^{1/t}) = 1/4
    double second = 0.5 * epsilon0(1.0 / Kt);
    return std::min(first, second);
}

double delta_min(double t, double K_inv) {
    if (!(t > 0.0 && t < 1.0)) fail("domain", "delta needs t in (0,1)");
    if (!(K_inv > 0.0 && K_inv < 1.0)) fail("domain", "delta needs K > 1");
    double K = 1.0 / K_inv;
    return 0.5 * (K - 1.0) / (std::pow(K, 1.0 / t) - 1.0);
}

DisplacementReport verify_displacement(const AnnulusMap& f, const BigRat& alpha, GridSpec grid) {
    DisplacementReport rep;
    BigRat a = frac_rat(alpha);
    rep.alpha = static_cast<double>(a);
    rep.K = std::max(1.0 + 1e-9, first_derivative_sup(f, grid));
    rep.inf_disp = inf_displacement(f, grid).value;
    if (a == 0 || rep.alpha >= 1.0 || circle_norm_rat(a) == 0) {
        rep.applicable = false;  // rho = 0 is not in the lemma's scope
        return rep;
    }
    rep.applicable = true;
    // Gauss image of the representative
    BigRat inv = 1 / a;
    rep.gauss_alpha = static_cast<double>(frac_rat(inv));
    double K_inv = 1.0 / rep.K;
    rep.precond_alpha = rep.alpha < epsilon0(K_inv);
    rep.precond_gauss =
        rep.alpha < 1.0 && rep.K > 1.0 && rep.gauss_alpha < epsilon1(rep.alpha, K_inv);
    if (rep.precond_alpha && rep.precond_gauss) {
        rep.delta = delta_min(rep.alpha, K_inv);
        rep.conclusion = rep.inf_disp >= rep.delta;
    }
    return rep;
}

}  // namespace pseudorot
