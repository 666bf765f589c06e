#pragma once

#include <vector>

#include "pseudorot/map.hpp"

namespace pseudorot {

// Uniform grid over [0,1]^2: x_i = i/nx (periodic), y_j = j/(ny-1); both
// boundary circles are included. Dyadic refinement doubles nx and ny-1.
struct GridSpec {
    int nx = 256;
    int ny = 33;

    GridSpec refine(int factor = 2) const { return {nx * factor, (ny - 1) * factor + 1}; }
    std::vector<Vec2> points() const;
};

struct MetricSample {
    GridSpec grid;
    double value = 0.0;
    Vec2 argmax{0.0, 0.0};
};

// sampled sup of d_A(f(x), g(x)) over the grid
MetricSample c0_distance(const AnnulusMap& f, const AnnulusMap& g, GridSpec grid = {});

// sampled sup of |F(x) - x| over the grid (lift displacement)
MetricSample lift_displacement(const AnnulusMap& f, GridSpec grid = {});

// sampled inf of d_A(x, f(x))
MetricSample inf_displacement(const AnnulusMap& f, GridSpec grid = {});

// The unique lift within 1/2 of the identity (Lemma with d_C0(f, Id) < 1/2).
// Returns f composed with the deck power that realizes it; throws
// "not-close-to-identity" when the precondition fails on the grid.
AnnulusMap principal_lift(const AnnulusMap& f, GridSpec grid = {});

// sampled sup of max_{|a|=1} |d^a F| (columns of the Jacobian, Euclidean)
double first_derivative_sup(const AnnulusMap& f, GridSpec grid = {});

// d_{Diff^r}: max of the C0 distances of the maps and their inverses and the
// C^r distances of lifts and inverse lifts. Order-1 terms use the analytic
// Jacobians; orders >= 2 use central finite differences of the Jacobians with
// step h = 1/1024 (one-sided at the y-boundary).
double diffr_distance(const AnnulusMap& f, const AnnulusMap& g, int r, GridSpec grid = {});

}  // namespace pseudorot
