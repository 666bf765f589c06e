#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pseudorot/map.hpp"

namespace pseudorot {

// A simple arc from B0 to B1, stored as lifted samples with continuous x and
// y increasing from 0 to 1. Interpolation between samples is Catmull-Rom.
class Curve {
public:
    Curve() = default;
    explicit Curve(std::vector<Vec2> samples);

    static Curve vertical(double x, int samples = 65);
    // graph curve x = c + u(y) from y-samples of u
    static Curve graph(double c, const std::vector<double>& offsets);

    const std::vector<Vec2>& samples() const { return pts_; }
    std::size_t size() const { return pts_.size(); }

    // interpolated point at parameter t in [0,1]
    Vec2 at(double t) const;
    // x-position where the curve crosses height y (first crossing);
    // well-defined for the monotone-in-y curves the pipeline produces
    double x_at_height(double y) const;

    Curve mapped(const AnnulusMap& f) const;       // pointwise image under the lift
    Curve shifted(double dx) const;                // deck-shifted copy
    Curve resampled(int n) const;
    // arclength-uniform reparameterization; returns total length
    Curve arclength_resampled(int n, double* length = nullptr) const;
    double polyline_length() const;

    // largest deviation of the end tangents from boundary-orthogonal
    double boundary_angle_defect() const;
    // locally reparameterize near the endpoints (blend width in y) so the
    // curve meets the boundary circles orthogonally
    Curve orthogonalized(double blend_width = 0.05) const;

    bool is_simple(double tol = 1e-9) const;  // no self intersections (sampled)

    void validate() const;

private:
    std::vector<Vec2> pts_;
};

// minimal annulus distance between two sampled curves (segment pairs with
// deck-shift reduction); also the workhorse for disjointness tests
double curve_distance(const Curve& a, const Curve& b);
// distance between curves as subsets of the lift (no deck reduction)
double lifted_curve_distance(const Curve& a, const Curve& b);
// Hausdorff-style sup of pointwise annulus distances (same parameterization)
double curve_sup_distance(const Curve& a, const Curve& b);

enum class CurveOrder { Left, Right, Intersecting };

// Ordering of lifted curves: Left when a is disjoint from b and lies in the
// component of the complement reaching x = -infinity.
CurveOrder curve_order(const Curve& a, const Curve& b, double tol = 1e-7);

struct QGoodWitness {
    bool good = false;
    double min_separation = 0.0;
    int first_i = -1, first_j = -1;  // offending pair when not good
    std::vector<Curve> iterates;     // gamma, f(gamma), ..., f^{Q-1}(gamma)
};

// gamma, f(gamma), ..., f^{Q-1}(gamma) pairwise disjoint up to the
// separation tolerance.
QGoodWitness is_q_good(const AnnulusMap& f, const Curve& gamma, int Q, double tol = 1e-7);

struct BrouwerSearchOptions {
    int Q = 2;
    int vertical_candidates = 64;
    int graph_attempts = 48;
    double tol = 1e-7;
    int samples = 65;
    unsigned seed = 1;
};

// Search for a Q-good curve: vertical lines first, then graph curves
// x = c + u(y) over a small smooth basis, keeping the candidate with the
// largest minimal pairwise separation. Deterministic for a fixed seed;
// throws "not-found" with the best separation achieved on failure.
Curve find_brouwer_curve(const AnnulusMap& f, const BrouwerSearchOptions& opts);

// closed region of the annulus bounded by (left, right)
class Region {
public:
    Region() = default;
    Region(Curve left, Curve right);

    const Curve& left() const { return left_; }
    const Curve& right() const { return right_; }

    // membership on the annulus: reduces p by deck shifts into the region's
    // x-range, then an even-odd crossing test on the boundary polygon
    bool contains(Vec2 p, double tol = 0.0) const;
    double area() const;  // Green's theorem on the boundary polygon
    double min_x() const { return minx_; }
    double max_x() const { return maxx_; }

private:
    Curve left_, right_;
    std::vector<Vec2> poly_;
    double minx_ = 0.0, maxx_ = 0.0;
};

// CSV serialization (t, x, y)
std::string curve_to_csv(const Curve& c);
Curve curve_from_csv(const std::string& text);

}  // namespace pseudorot
