#include "pseudorot/metrics.hpp"

#include <cmath>

namespace pseudorot {

std::vector<Vec2> GridSpec::points() const {
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        double y = static_cast<double>(j) / (ny - 1);
        for (int i = 0; i < nx; ++i) pts.push_back({static_cast<double>(i) / nx, y});
    }
    return pts;
}

MetricSample c0_distance(const AnnulusMap& f, const AnnulusMap& g, GridSpec grid) {
    MetricSample out;
    out.grid = grid;
    for (const Vec2& p : grid.points()) {
        double d = annulus_distance(f.lift(p), g.lift(p));
        if (d > out.value) {
            out.value = d;
            out.argmax = p;
        }
    }
    return out;
}

MetricSample lift_displacement(const AnnulusMap& f, GridSpec grid) {
    MetricSample out;
    out.grid = grid;
    for (const Vec2& p : grid.points()) {
        double d = (f.lift(p) - p).norm();
        if (d > out.value) {
            out.value = d;
            out.argmax = p;
        }
    }
    return out;
}

MetricSample inf_displacement(const AnnulusMap& f, GridSpec grid) {
    MetricSample out;
    out.grid = grid;
    out.value = 1e30;
    for (const Vec2& p : grid.points()) {
        double d = annulus_distance(f.eval(p), p);
        if (d < out.value) {
            out.value = d;
            out.argmax = p;
        }
    }
    return out;
}

AnnulusMap principal_lift(const AnnulusMap& f, GridSpec grid) {
    // choose the deck power from the mean drift, then verify the bound
    double drift = 0.0;
    auto pts = grid.points();
    for (const Vec2& p : pts) drift += f.lift(p).x - p.x;
    drift /= static_cast<double>(pts.size());
    long k = std::lround(-drift);
    AnnulusMap lifted = k == 0 ? f : deck_shift(f, k);
    MetricSample disp = lift_displacement(lifted, grid);
    if (!(disp.value < 0.5))
        fail("not-close-to-identity",
             "sampled ||F - Id|| = " + std::to_string(disp.value) + " is not < 1/2");
    return lifted;
}

double first_derivative_sup(const AnnulusMap& f, GridSpec grid) {
    double sup = 0.0;
    for (const Vec2& p : grid.points()) {
        Mat2 j = f.jacobian(p);
        sup = std::max(sup, std::hypot(j.xx, j.yx));
        sup = std::max(sup, std::hypot(j.xy, j.yy));
    }
    return sup;
}

namespace {

constexpr double kFdStep = 1.0 / 1024.0;

Mat2 jac_gap(const AnnulusMap& f, const AnnulusMap& g, Vec2 p) {
    Mat2 a = f.jacobian(p), b = g.jacobian(p);
    return {a.xx - b.xx, a.xy - b.xy, a.yx - b.yx, a.yy - b.yy};
}

double col_sup(const Mat2& m) {
    return std::max(std::hypot(m.xx, m.yx), std::hypot(m.xy, m.yy));
}

// difference quotient of the Jacobian gap in direction dir (0 = x, 1 = y);
// one-sided at the y-boundary
Mat2 jac_gap_fd(const AnnulusMap& f, const AnnulusMap& g, Vec2 p, int dir) {
    double h = kFdStep;
    Vec2 lo = p, hi = p;
    if (dir == 0) {
        lo.x -= h;
        hi.x += h;
    } else {
        lo.y = std::max(0.0, p.y - h);
        hi.y = std::min(1.0, p.y + h);
    }
    double scale = (dir == 0) ? 2.0 * h : (hi.y - lo.y);
    Mat2 a = jac_gap(f, g, hi), b = jac_gap(f, g, lo);
    return {(a.xx - b.xx) / scale, (a.xy - b.xy) / scale, (a.yx - b.yx) / scale,
            (a.yy - b.yy) / scale};
}

// max over multi-indices |gamma| = order of |d^gamma (F - G)| at p
double deriv_gap(const AnnulusMap& f, const AnnulusMap& g, int order, Vec2 p) {
    if (order == 1) return col_sup(jac_gap(f, g, p));
    if (order == 2) {
        Mat2 dx = jac_gap_fd(f, g, p, 0);
        Mat2 dy = jac_gap_fd(f, g, p, 1);
        // columns of D(dx), D(dy) cover (2,0), (1,1), (0,2)
        return std::max(col_sup(dx), col_sup(dy));
    }
    // orders beyond 2: nested differences of the order-2 measurement
    double h = kFdStep;
    auto lower = [&](Vec2 q) { return deriv_gap(f, g, order - 1, q); };
    double fx = (lower({p.x + h, p.y}) - lower({p.x - h, p.y})) / (2.0 * h);
    double ylo = std::max(0.0, p.y - h), yhi = std::min(1.0, p.y + h);
    double fy = (lower({p.x, yhi}) - lower({p.x, ylo})) / (yhi - ylo);
    return std::max(std::fabs(fx), std::fabs(fy));
}

double cr_gap(const AnnulusMap& f, const AnnulusMap& g, int r, const std::vector<Vec2>& pts) {
    double sup = 0.0;
    for (const Vec2& p : pts)
        for (int order = 1; order <= r; ++order) sup = std::max(sup, deriv_gap(f, g, order, p));
    return sup;
}

}  // namespace

double diffr_distance(const AnnulusMap& f, const AnnulusMap& g, int r, GridSpec grid) {
    if (r < 1) fail("domain", "diffr_distance needs r >= 1");
    AnnulusMap fi = f.inverse(), gi = g.inverse();
    double d = std::max(c0_distance(f, g, grid).value, c0_distance(fi, gi, grid).value);
    auto pts = grid.points();
    d = std::max(d, cr_gap(f, g, r, pts));
    d = std::max(d, cr_gap(fi, gi, r, pts));
    return d;
}

}  // namespace pseudorot
