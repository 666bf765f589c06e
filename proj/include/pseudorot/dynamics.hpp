#pragma once

#include <map>
#include <optional>

#include "pseudorot/cf.hpp"
#include "pseudorot/map.hpp"
#include "pseudorot/metrics.hpp"

namespace pseudorot {

struct RotationEstimate {
    double value = 0.0;       // mean drift / N, reduced mod 1
    long iterates = 0;        // N
    int samples = 0;
    double error_bound = 0.0; // cross-sample span + (1 + max step)/N
    double span = 0.0;        // max deviation between per-sample averages
};

// Birkhoff estimate of the rotation number of the distinguished lift:
// mean over sample orbits of (p1(F^N(x)) - p1(x))/N, reduced mod 1.
RotationEstimate rotation_number_estimate(const AnnulusMap& f, long iterates = 10000,
                                          int samples = 8);

// unreduced drift of the distinguished lift (not taken mod 1)
double lift_drift_estimate(const AnnulusMap& f, long iterates = 2048, int samples = 4);

// c_r constants of the interpolation inequalities are not specified by the
// theory; they default to 1 and are plain configuration.
struct BoundConfig {
    std::map<int, double> c_r;

    double c(int r) const;
    void validate() const;
};

// A_0(s, K) = (1 + 2K) sqrt(s)
double bound_A0(double s, double K);
// A_r(s, K) = c_r s^{1/(2(r+1))} (1 + 2K), r >= 1
double bound_Ar(int r, double s, double K, const BoundConfig& cfg = {});
// largest s with A_0(s, 1/K_inv) <= 1/2, capped below 1/2
double epsilon0(double K_inv);
// min( sup{s : A_0(s, K^{1/t}) <= 1/4}, epsilon0(K^{-1/t}) / 2 )
double epsilon1(double t, double K_inv);
// delta(t, 1/K) = (1/2)(K - 1)/(K^{1/t} - 1)
double delta_min(double t, double K_inv);

struct DisplacementReport {
    double alpha = 0.0;
    double gauss_alpha = 0.0;
    double K = 0.0;               // sampled sup ||Df||
    bool applicable = false;      // rotation number usable (nonzero norm)
    bool precond_alpha = false;   // alpha < epsilon0(1/K)
    bool precond_gauss = false;   // G(alpha) < epsilon1(alpha, 1/K)
    double delta = 0.0;
    double inf_disp = 0.0;
    bool conclusion = false;      // inf displacement >= delta
};

// Empirical check of the uniform-displacement lemma for a map with known
// rotation-number representative.
DisplacementReport verify_displacement(const AnnulusMap& f, const BigRat& alpha,
                                       GridSpec grid = {});

}  // namespace pseudorot
