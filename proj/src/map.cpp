#include "pseudorot/map.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace pseudorot {

namespace {

double rat_to_double(const BigRat& r) { return static_cast<double>(r); }

// ---- rigid rotation -------------------------------------------------------

class RigidNode final : public MapNode {
public:
    explicit RigidNode(BigRat t) : t_(std::move(t)), td_(rat_to_double(t_)) {}

    Vec2 lift(Vec2 p) const override { return {p.x + td_, p.y}; }
    Vec2 lift_inv(Vec2 p) const override { return {p.x - td_, p.y}; }
    Mat2 jacobian(Vec2) const override { return Mat2::identity(); }
    Mat2 jacobian_inv(Vec2) const override { return Mat2::identity(); }

    void describe(nlohmann::json& out) const override {
        out = {{"kind", "rigid"}, {"t", t_.str()}};
    }

    const BigRat& angle() const { return t_; }

private:
    BigRat t_;
    double td_;
};

// ---- polynomial twist ------------------------------------------------------

class TwistNode final : public MapNode {
public:
    explicit TwistNode(std::vector<double> c) : c_(std::move(c)) {}

    Vec2 lift(Vec2 p) const override { return {p.x + horner(p.y), p.y}; }
    Vec2 lift_inv(Vec2 p) const override { return {p.x - horner(p.y), p.y}; }
    Mat2 jacobian(Vec2 p) const override { return {1.0, dhorner(p.y), 0.0, 1.0}; }
    Mat2 jacobian_inv(Vec2 p) const override { return {1.0, -dhorner(p.y), 0.0, 1.0}; }

    void describe(nlohmann::json& out) const override {
        out = {{"kind", "twist"}, {"coeffs", c_}};
    }

private:
    double horner(double y) const {
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 0;) v = v * y + c_[i];
        return v;
    }
    double dhorner(double y) const {
        double v = 0.0;
        for (std::size_t i = c_.size(); i-- > 1;) v = v * y + c_[i] * static_cast<double>(i);
        return v;
    }

    std::vector<double> c_;
};

// ---- radial Hamiltonian bump ------------------------------------------------

// kappa(rho) = (1 - rho^2)^4, kappa'(rho) = -8 rho (1 - rho^2)^3
class BumpNode final : public MapNode {
public:
    BumpNode(double cx, double cy, double radius, double strength, int copies)
        : cx_(cx), cy_(cy), r_(radius), s_(strength), q_(copies) {
        if (r_ <= 0.0) fail("domain", "bump radius must be positive");
        if (q_ < 1) fail("domain", "bump copy count must be >= 1");
        if (r_ >= 0.5 / q_) fail("domain", "bump radius must stay below half the copy spacing");
        if (cy_ - r_ < 0.0 || cy_ + r_ > 1.0)
            fail("domain", "bump support must avoid the boundary circles");
    }

    Vec2 lift(Vec2 p) const override { return act(p, +1.0); }
    Vec2 lift_inv(Vec2 p) const override { return act(p, -1.0); }

    Mat2 jacobian(Vec2 p) const override { return diff(p, +1.0); }
    Mat2 jacobian_inv(Vec2 p) const override { return diff(p, -1.0); }

    void describe(nlohmann::json& out) const override {
        out = {{"kind", "bump"}, {"cx", cx_}, {"cy", cy_},
               {"radius", r_},  {"strength", s_}, {"copies", q_}};
    }

private:
    // displacement to the nearest of the q copies spaced 1/q apart
    Vec2 rel(Vec2 p) const {
        double raw = p.x - cx_;
        double dx = raw - std::round(raw * q_) / q_;
        return {dx, p.y - cy_};
    }

    Vec2 act(Vec2 p, double sign) const {
        Vec2 v = rel(p);
        double r2 = v.x * v.x + v.y * v.y;
        if (r2 >= r_ * r_) return p;
        double rho2 = r2 / (r_ * r_);
        double w = 1.0 - rho2;
        double theta = sign * s_ * w * w * w * w;
        double c = std::cos(theta), s = std::sin(theta);
        Vec2 rotated{c * v.x - s * v.y, s * v.x + c * v.y};
        return {p.x + rotated.x - v.x, p.y + rotated.y - v.y};
    }

    Mat2 diff(Vec2 p, double sign) const {
        Vec2 v = rel(p);
        double r2 = v.x * v.x + v.y * v.y;
        if (r2 >= r_ * r_) return Mat2::identity();
        double r = std::sqrt(r2);
        double rho2 = r2 / (r_ * r_);
        double w = 1.0 - rho2;
        double theta = sign * s_ * w * w * w * w;
        double c = std::cos(theta), s = std::sin(theta);
        Mat2 rot{c, -s, s, c};
        if (r == 0.0) return rot;
        // d theta / dr = sign * s_ * kappa'(r/R) / R
        double rho = r / r_;
        double dtheta = sign * s_ * (-8.0 * rho * w * w * w) / r_;
        // DF = Rot(theta) + dtheta * Rot(theta + pi/2) v  (x)  v^T / r
        Vec2 rv{-s * v.x - c * v.y, c * v.x - s * v.y};
        double f = dtheta / r;
        return {rot.xx + f * rv.x * v.x, rot.xy + f * rv.x * v.y,
                rot.yx + f * rv.y * v.x, rot.yy + f * rv.y * v.y};
    }

    double cx_, cy_, r_, s_;
    int q_;
};

// ---- sampled displacement field ---------------------------------------------

double catmull(double f0, double f1, double f2, double f3, double t) {
    return f1 + 0.5 * t * (f2 - f0 +
                           t * (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3 +
                                t * (3.0 * (f1 - f2) + f3 - f0)));
}

double dcatmull(double f0, double f1, double f2, double f3, double t) {
    return 0.5 * (f2 - f0) + t * (2.0 * f0 - 5.0 * f1 + 4.0 * f2 - f3) +
           1.5 * t * t * (3.0 * (f1 - f2) + f3 - f0);
}

class GridNode final : public MapNode {
public:
    GridNode(int nx, int ny, std::vector<double> dx, std::vector<double> dy)
        : nx_(nx), ny_(ny), dx_(std::move(dx)), dy_(std::move(dy)) {
        if (nx_ < 4 || ny_ < 4) fail("domain", "grid map needs at least a 4x4 grid");
        if (dx_.size() != static_cast<std::size_t>(nx_ * ny_) || dy_.size() != dx_.size())
            fail("domain", "grid map field size mismatch");
    }

    Vec2 lift(Vec2 p) const override {
        auto [u, v, du, dv] = sample(p);
        (void)du;
        (void)dv;
        return {p.x + u, p.y + v};
    }

    Mat2 jacobian(Vec2 p) const override {
        auto [u, v, du, dv] = sample(p);
        (void)u;
        (void)v;
        return {1.0 + du.x, du.y, dv.x, 1.0 + dv.y};
    }

    Vec2 lift_inv(Vec2 target) const override {
        // seed from the forward grid, then Newton (cap 20, residual 1e-12)
        Vec2 best{0.0, 0.0};
        double bestd = 1e30;
        for (int j = 0; j < ny_; ++j) {
            for (int i = 0; i < nx_; ++i) {
                Vec2 node{static_cast<double>(i) / nx_, static_cast<double>(j) / (ny_ - 1)};
                Vec2 img = lift(node);
                double d = std::hypot(wrap_half(img.x - target.x), img.y - target.y);
                if (d < bestd) {
                    bestd = d;
                    best = {node.x + std::round(target.x - img.x), node.y};
                }
            }
        }
        Vec2 p = best;
        for (int it = 0; it < 20; ++it) {
            Vec2 r = lift(p) - target;
            if (r.norm() < 1e-12) return p;
            Vec2 step = jacobian(p).inverse().apply(r);
            p = p - step;
            p.y = std::clamp(p.y, 0.0, 1.0);
        }
        if ((lift(p) - target).norm() < 1e-9) return p;
        fail("newton-divergence", "grid map inversion did not reach residual target");
    }

    void describe(nlohmann::json& out) const override {
        out = {{"kind", "grid"}, {"nx", nx_}, {"ny", ny_}, {"dx", dx_}, {"dy", dy_}};
    }

private:
    double at(const std::vector<double>& f, int i, int j) const {
        i = ((i % nx_) + nx_) % nx_;
        j = std::clamp(j, 0, ny_ - 1);
        return f[static_cast<std::size_t>(j) * nx_ + i];
    }

    struct Sample {
        double u, v;
        Vec2 du, dv;  // gradients of the two displacement components
    };

    Sample sample(Vec2 p) const {
        double gx = wrap01(p.x) * nx_;
        double gy = std::clamp(p.y, 0.0, 1.0) * (ny_ - 1);
        int i = static_cast<int>(std::floor(gx));
        int j = static_cast<int>(std::floor(gy));
        if (j >= ny_ - 1) j = ny_ - 2;
        double tx = gx - i, ty = gy - j;
        double cu[4], cv[4], dcu[4], dcv[4];
        for (int k = -1; k <= 2; ++k) {
            cu[k + 1] = catmull(at(dx_, i - 1, j + k), at(dx_, i, j + k), at(dx_, i + 1, j + k),
                                at(dx_, i + 2, j + k), tx);
            cv[k + 1] = catmull(at(dy_, i - 1, j + k), at(dy_, i, j + k), at(dy_, i + 1, j + k),
                                at(dy_, i + 2, j + k), tx);
            dcu[k + 1] = dcatmull(at(dx_, i - 1, j + k), at(dx_, i, j + k), at(dx_, i + 1, j + k),
                                  at(dx_, i + 2, j + k), tx);
            dcv[k + 1] = dcatmull(at(dy_, i - 1, j + k), at(dy_, i, j + k), at(dy_, i + 1, j + k),
                                  at(dy_, i + 2, j + k), tx);
        }
        Sample s;
        s.u = catmull(cu[0], cu[1], cu[2], cu[3], ty);
        s.v = catmull(cv[0], cv[1], cv[2], cv[3], ty);
        // d/dx and d/dy in grid units -> rescale
        double du_dx = catmull(dcu[0], dcu[1], dcu[2], dcu[3], ty) * nx_;
        double dv_dx = catmull(dcv[0], dcv[1], dcv[2], dcv[3], ty) * nx_;
        double du_dy = dcatmull(cu[0], cu[1], cu[2], cu[3], ty) * (ny_ - 1);
        double dv_dy = dcatmull(cv[0], cv[1], cv[2], cv[3], ty) * (ny_ - 1);
        s.du = {du_dx, du_dy};
        s.dv = {dv_dx, dv_dy};
        return s;
    }

    int nx_, ny_;
    std::vector<double> dx_, dy_;
};

// ---- composition / inverse ---------------------------------------------------

class ComposeNode final : public MapNode {
public:
    ComposeNode(MapPtr outer, MapPtr inner) : outer_(std::move(outer)), inner_(std::move(inner)) {}

    Vec2 lift(Vec2 p) const override { return outer_->lift(inner_->lift(p)); }
    Vec2 lift_inv(Vec2 p) const override { return inner_->lift_inv(outer_->lift_inv(p)); }
    Mat2 jacobian(Vec2 p) const override {
        Vec2 mid = inner_->lift(p);
        return outer_->jacobian(mid).mul(inner_->jacobian(p));
    }

    void describe(nlohmann::json& out) const override {
        nlohmann::json a, b;
        outer_->describe(a);
        inner_->describe(b);
        out = {{"kind", "compose"}, {"outer", a}, {"inner", b}};
    }

private:
    MapPtr outer_, inner_;
};

class InverseNode final : public MapNode {
public:
    explicit InverseNode(MapPtr base) : base_(std::move(base)) {}

    Vec2 lift(Vec2 p) const override { return base_->lift_inv(p); }
    Vec2 lift_inv(Vec2 p) const override { return base_->lift(p); }
    Mat2 jacobian(Vec2 p) const override { return base_->jacobian_inv(p); }
    Mat2 jacobian_inv(Vec2 p) const override { return base_->jacobian(p); }

    void describe(nlohmann::json& out) const override {
        nlohmann::json b;
        base_->describe(b);
        out = {{"kind", "inverse"}, {"of", b}};
    }

    const MapPtr& base() const { return base_; }

private:
    MapPtr base_;
};

}  // namespace

AnnulusMap::AnnulusMap() : node_(std::make_shared<RigidNode>(BigRat(0))) {}
AnnulusMap::AnnulusMap(MapPtr node) : node_(std::move(node)) {
    if (!node_) fail("domain", "null map node");
}

AnnulusMap AnnulusMap::inverse() const {
    if (auto inv = dynamic_cast<const InverseNode*>(node_.get()))
        return AnnulusMap(inv->base());
    if (auto rig = dynamic_cast<const RigidNode*>(node_.get()))
        return rigid_rotation(-rig->angle());
    return AnnulusMap(std::make_shared<InverseNode>(node_));
}

const BigRat* AnnulusMap::rigid_angle() const {
    if (auto rig = dynamic_cast<const RigidNode*>(node_.get())) return &rig->angle();
    return nullptr;
}

nlohmann::json AnnulusMap::to_json() const {
    nlohmann::json j;
    node_->describe(j);
    return j;
}

AnnulusMap identity_map() { return rigid_rotation(BigRat(0)); }

AnnulusMap rigid_rotation(const BigRat& t) {
    return AnnulusMap(std::make_shared<RigidNode>(t));
}

AnnulusMap rigid_rotation(double t) {
    // exact binary rational of the double, so rigid algebra stays exact
    return rigid_rotation(BigRat(t));
}

AnnulusMap twist_map(std::vector<double> poly_coeffs) {
    return AnnulusMap(std::make_shared<TwistNode>(std::move(poly_coeffs)));
}

AnnulusMap hamiltonian_bump(double cx, double cy, double radius, double strength) {
    return AnnulusMap(std::make_shared<BumpNode>(cx, cy, radius, strength, 1));
}

AnnulusMap periodic_bump_array(double cx, double cy, double radius, double strength, int q) {
    return AnnulusMap(std::make_shared<BumpNode>(cx, cy, radius, strength, q));
}

AnnulusMap grid_map(int nx, int ny, std::vector<double> dx, std::vector<double> dy) {
    return AnnulusMap(std::make_shared<GridNode>(nx, ny, std::move(dx), std::move(dy)));
}

AnnulusMap deck_shift(const AnnulusMap& f, long k) {
    return compose(rigid_rotation(BigRat(k)), f);
}

AnnulusMap compose(const AnnulusMap& f, const AnnulusMap& g) {
    const BigRat* fa = f.rigid_angle();
    const BigRat* ga = g.rigid_angle();
    if (fa && ga) return rigid_rotation(*fa + *ga);
    if (fa && *fa == 0) return g;
    if (ga && *ga == 0) return f;
    return AnnulusMap(std::make_shared<ComposeNode>(f.node(), g.node()));
}

AnnulusMap iterate(const AnnulusMap& f, long n) {
    if (n == 0) return identity_map();
    if (n < 0) return iterate(f.inverse(), -n);
    if (const BigRat* a = f.rigid_angle()) return rigid_rotation(*a * n);
    // binary exponentiation with shared subtrees keeps depth O(log n)
    AnnulusMap result = identity_map();
    AnnulusMap power = f;
    bool have = false;
    long m = n;
    while (m > 0) {
        if (m & 1) {
            result = have ? compose(result, power) : power;
            have = true;
        }
        m >>= 1;
        if (m > 0) power = compose(power, power);
    }
    return result;
}

AnnulusMap iterate_fold(const AnnulusMap& f, long n) {
    if (n == 0) return identity_map();
    AnnulusMap base = n > 0 ? f : f.inverse();
    long m = std::labs(n);
    AnnulusMap result = base;
    for (long i = 1; i < m; ++i) result = compose(result, base);
    return result;
}

AnnulusMap map_from_json(const nlohmann::json& spec) {
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "rigid") return rigid_rotation(BigRat(spec.at("t").get<std::string>()));
    if (kind == "twist") return twist_map(spec.at("coeffs").get<std::vector<double>>());
    if (kind == "bump")
        return periodic_bump_array(spec.at("cx").get<double>(), spec.at("cy").get<double>(),
                                   spec.at("radius").get<double>(),
                                   spec.at("strength").get<double>(),
                                   spec.value("copies", 1));
    if (kind == "grid")
        return grid_map(spec.at("nx").get<int>(), spec.at("ny").get<int>(),
                        spec.at("dx").get<std::vector<double>>(),
                        spec.at("dy").get<std::vector<double>>());
    if (kind == "compose")
        return compose(map_from_json(spec.at("outer")), map_from_json(spec.at("inner")));
    if (kind == "inverse") return map_from_json(spec.at("of")).inverse();
    fail("parse", "unknown map kind '" + kind + "'");
}

AkResult ak_build(const AkSchedule& schedule, const RotationNumber& target) {
    // every stage target must be a convergent of the construction target
    const auto& cv = target.convs();
    for (const auto& st : schedule.stages) {
        bool found = false;
        for (const auto& c : cv)
            if (c.p == st.p && c.q == st.q) {
                found = true;
                break;
            }
        if (!found)
            fail("schedule-mismatch",
                 "stage target " + st.p.str() + "/" + st.q.str() + " is not a convergent");
    }
    AnnulusMap h = identity_map();
    for (const auto& st : schedule.stages) {
        int q = static_cast<int>(st.q);
        double radius = st.bump_radius > 0.0 ? st.bump_radius : 0.4 / q;
        h = compose(h, periodic_bump_array(st.bump_x, st.bump_y, radius, st.strength, q));
    }
    BigRat angle = target.representative();
    AnnulusMap f = compose(h, compose(rigid_rotation(angle), h.inverse()));
    return {h, f, angle};
}

}  // namespace pseudorot
