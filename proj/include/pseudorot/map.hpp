#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "pseudorot/cf.hpp"
#include "pseudorot/geom.hpp"

namespace pseudorot {

// A diffeomorphism of the annulus given through its distinguished lift
// F: R x [0,1] -> R x [0,1], F(x+1, y) = F(x, y) + (1, 0). Nodes are
// immutable after construction; evaluation is pure.
class MapNode {
public:
    virtual ~MapNode() = default;

    virtual Vec2 lift(Vec2 p) const = 0;
    virtual Vec2 lift_inv(Vec2 p) const = 0;
    virtual Mat2 jacobian(Vec2 p) const = 0;
    virtual Mat2 jacobian_inv(Vec2 p) const { return jacobian(lift_inv(p)).inverse(); }
    virtual void describe(nlohmann::json& out) const = 0;
};

using MapPtr = std::shared_ptr<const MapNode>;

class AnnulusMap {
public:
    AnnulusMap();  // identity
    explicit AnnulusMap(MapPtr node);

    Vec2 lift(Vec2 p) const { return node_->lift(p); }
    Vec2 lift_inv(Vec2 p) const { return node_->lift_inv(p); }
    // evaluation on the annulus: x reduced to [0,1)
    Vec2 eval(Vec2 p) const {
        Vec2 q = node_->lift(p);
        return {wrap01(q.x), q.y};
    }
    Mat2 jacobian(Vec2 p) const { return node_->jacobian(p); }
    double jacobian_det(Vec2 p) const { return node_->jacobian(p).det(); }

    AnnulusMap inverse() const;
    const MapPtr& node() const { return node_; }

    // exact rotation parameter when the whole tree collapses to a rigid
    // rotation (used for exact power folding)
    const BigRat* rigid_angle() const;

    nlohmann::json to_json() const;

private:
    MapPtr node_;
};

AnnulusMap identity_map();
// rigid rotation by t (exact); its lift is x + t with t kept un-reduced, so
// the rational also selects the lift
AnnulusMap rigid_rotation(const BigRat& t);
AnnulusMap rigid_rotation(double t);
// twist (x, y) -> (x + c(y), y) with polynomial c
AnnulusMap twist_map(std::vector<double> poly_coeffs);
// time-1 flow of the radial Hamiltonian s*(1 - r^2/R^2)^4 supported in the
// disc of radius R about (cx, cy): rotates each circle r = const by the
// angle s*kappa(r/R); exactly area preserving with closed-form inverse.
AnnulusMap hamiltonian_bump(double cx, double cy, double radius, double strength);
// q equally spaced copies of the bump along x (spacing 1/q); commutes with
// R_{1/q} exactly; requires radius < 1/(2q)
AnnulusMap periodic_bump_array(double cx, double cy, double radius, double strength, int q);
// sampled displacement field with bicubic interpolation (periodic in x);
// inverse by Newton iteration seeded from the forward grid
AnnulusMap grid_map(int nx, int ny, std::vector<double> dx, std::vector<double> dy);
// deck shift T^k composed on: selects another lift of the same annulus map
AnnulusMap deck_shift(const AnnulusMap& f, long k);

AnnulusMap compose(const AnnulusMap& f, const AnnulusMap& g);  // f after g
// n-fold composition, balanced tree (inverse composition for n < 0)
AnnulusMap iterate(const AnnulusMap& f, long n);
// naive left fold, kept for cross-checks against the balanced tree
AnnulusMap iterate_fold(const AnnulusMap& f, long n);

AnnulusMap map_from_json(const nlohmann::json& spec);

// ---- finite-stage Anosov-Katok constructor ----

struct AkStage {
    // rotation target p_k/q_k for this stage (must be a convergent of the
    // construction target); the conjugator commutes with R_{p_k/q_k}
    BigInt p, q;
    double bump_y = 0.5;       // vertical center of the stage bump
    double bump_radius = 0.0;  // 0 -> auto: 0.4/q
    double strength = 0.6;
    double bump_x = 0.25;      // horizontal anchor of the bump family
};

struct AkSchedule {
    std::vector<AkStage> stages;
};

struct AkResult {
    AnnulusMap conjugator;  // h
    AnnulusMap map;         // f = h R h^{-1}
    BigRat angle;           // the rational representative conjugated by h
};

// Builds f = h R_a h^{-1} where a is the rational representative of `target`
// one convergent past the last stage (or the representative itself if the
// expansion ends there) and h is the product of stage conjugators, each a
// periodic bump array commuting with its stage rotation.
AkResult ak_build(const AkSchedule& schedule, const RotationNumber& target);

}  // namespace pseudorot
