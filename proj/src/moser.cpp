#include "pseudorot/moser.hpp"

#include <algorithm>
#include <cmath>

#include "pseudorot/errors.hpp"

namespace pseudorot {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

DensityField DensityField::sample(DomainKind kind, int nx, int ny,
                                  const std::function<double(double, double)>& rho) {
    DensityField f;
    f.kind = kind;
    f.nx = nx;
    f.ny = ny;
    f.vals.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            f.vals[static_cast<std::size_t>(j) * nx + i] = rho(f.node_x(i), f.node_y(j));
    return f;
}

double DensityField::node_x(int i) const {
    return kind == DomainKind::Square ? (i + 0.5) / nx : static_cast<double>(i) / nx;
}

double DensityField::node_y(int j) const { return (j + 0.5) / ny; }

double DensityField::mean() const {
    double s = 0.0;
    for (double v : vals) s += v;
    return s / static_cast<double>(vals.size());
}

double DensityField::min_value() const {
    double m = 1e300;
    for (double v : vals) m = std::min(m, v);
    return m;
}

void DensityField::normalize() {
    if (min_value() <= 0.0) fail("non-positive-density", "density must be strictly positive");
    double m = mean();
    for (double& v : vals) v /= m;
}

double DensityField::smoothness_diagnostic() const {
    double hx = 1.0 / nx, hy = 1.0 / ny;
    double worst = 0.0;
    auto at = [&](int i, int j) {
        i = ((i % nx) + nx) % nx;
        j = std::clamp(j, 0, ny - 1);
        return vals[static_cast<std::size_t>(j) * nx + i];
    };
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            double dxx = (at(i + 1, j) - 2 * at(i, j) + at(i - 1, j)) / (hx * hx);
            double dyy = (at(i, j + 1) - 2 * at(i, j) + at(i, j - 1)) / (hy * hy);
            double dx = (at(i + 1, j) - at(i - 1, j)) / (2 * hx);
            double dy = (at(i, j + 1) - at(i, j - 1)) / (2 * hy);
            for (double v : {dxx, dyy, dx, dy}) worst = std::max(worst, std::fabs(v));
        }
    }
    return worst;
}

DivergenceSolution::DivergenceSolution(DomainKind kind, std::vector<SpectralMode> modes,
                                       double residual)
    : kind_(kind), modes_(std::move(modes)), residual_(residual) {}

namespace {

struct Basis {
    double fx, dfx;  // x factor and derivative
    double fy, dfy;
};

inline Basis basis_at(DomainKind kind, const SpectralMode& m, Vec2 p) {
    Basis b;
    if (kind == DomainKind::Square) {
        double ax = kPi * m.kx;
        b.fx = std::cos(ax * p.x);
        b.dfx = -ax * std::sin(ax * p.x);
    } else {
        double ax = 2.0 * kPi * m.kx;
        double c = std::cos(ax * p.x), s = std::sin(ax * p.x);
        if (m.sin_x) {
            b.fx = s;
            b.dfx = ax * c;
        } else {
            b.fx = c;
            b.dfx = -ax * s;
        }
    }
    double ay = kPi * m.ky;
    b.fy = std::cos(ay * p.y);
    b.dfy = -ay * std::sin(ay * p.y);
    return b;
}

inline double lambda_of(DomainKind kind, const SpectralMode& m) {
    double ax = (kind == DomainKind::Square) ? kPi * m.kx : 2.0 * kPi * m.kx;
    double ay = kPi * m.ky;
    return ax * ax + ay * ay;
}

}  // namespace

double DivergenceSolution::u(Vec2 p) const {
    double s = 0.0;
    for (const auto& m : modes_) {
        Basis b = basis_at(kind_, m, p);
        s += m.c * b.fx * b.fy;
    }
    return s;
}

Vec2 DivergenceSolution::w(Vec2 p) const {
    Vec2 g{0.0, 0.0};
    for (const auto& m : modes_) {
        Basis b = basis_at(kind_, m, p);
        g.x += m.c * b.dfx * b.fy;
        g.y += m.c * b.fx * b.dfy;
    }
    return g;
}

Mat2 DivergenceSolution::dw(Vec2 p) const {
    Mat2 H{0.0, 0.0, 0.0, 0.0};
    for (const auto& m : modes_) {
        Basis b = basis_at(kind_, m, p);
        double ax = (kind_ == DomainKind::Square) ? kPi * m.kx : 2.0 * kPi * m.kx;
        double ay = kPi * m.ky;
        double d2fx = -ax * ax * b.fx;
        double d2fy = -ay * ay * b.fy;
        H.xx += m.c * d2fx * b.fy;
        H.xy += m.c * b.dfx * b.dfy;
        H.yx += m.c * b.dfx * b.dfy;
        H.yy += m.c * b.fx * d2fy;
    }
    return H;
}

double DivergenceSolution::rho(Vec2 p) const {
    double s = 1.0;
    for (const auto& m : modes_) {
        Basis b = basis_at(kind_, m, p);
        s += -lambda_of(kind_, m) * m.c * b.fx * b.fy;
    }
    return s;
}

Vec2 DivergenceSolution::grad_rho(Vec2 p) const {
    Vec2 g{0.0, 0.0};
    for (const auto& m : modes_) {
        Basis b = basis_at(kind_, m, p);
        double lam = -lambda_of(kind_, m) * m.c;
        g.x += lam * b.dfx * b.fy;
        g.y += lam * b.fx * b.dfy;
    }
    return g;
}

DivergenceSolution solve_divergence(const DensityField& rho, const SolveOptions& opts) {
    if (rho.nx < 4 || rho.ny < 4) fail("domain", "density grid too small");
    if (rho.min_value() <= 0.0) fail("non-positive-density", "density must be positive");
    double mean = rho.mean();
    if (std::fabs(mean - 1.0) > opts.mean_tol)
        fail("mean-error", "density mean " + std::to_string(mean) + " is not 1");

    const int nx = rho.nx, ny = rho.ny;
    const bool square = rho.kind == DomainKind::Square;
    const int kx_max = square ? nx - 1 : nx / 2 - 1;

    // separable forward transform: rows in x, then columns in y
    // square: coefficients of cos(pi k x) at midpoints (DCT-II)
    // annulus: cos/sin(2 pi k x) at uniform nodes (real DFT)
    std::vector<double> cosk(static_cast<std::size_t>(nx) * (kx_max + 1));
    std::vector<double> sink;
    for (int k = 0; k <= kx_max; ++k)
        for (int i = 0; i < nx; ++i)
            cosk[static_cast<std::size_t>(k) * nx + i] =
                square ? std::cos(kPi * k * (i + 0.5) / nx)
                       : std::cos(2.0 * kPi * k * i / nx);
    if (!square) {
        sink.resize(cosk.size());
        for (int k = 0; k <= kx_max; ++k)
            for (int i = 0; i < nx; ++i)
                sink[static_cast<std::size_t>(k) * nx + i] = std::sin(2.0 * kPi * k * i / nx);
    }
    std::vector<double> cosm(static_cast<std::size_t>(ny) * ny);
    for (int m = 0; m < ny; ++m)
        for (int j = 0; j < ny; ++j)
            cosm[static_cast<std::size_t>(m) * ny + j] = std::cos(kPi * m * (j + 0.5) / ny);

    auto xrow_coef = [&](const std::vector<double>& basis, int k, int j) {
        double s = 0.0;
        for (int i = 0; i < nx; ++i)
            s += basis[static_cast<std::size_t>(k) * nx + i] *
                 rho.vals[static_cast<std::size_t>(j) * nx + i];
        double scale = (square ? (k == 0 ? 1.0 : 2.0) : (k == 0 ? 1.0 : 2.0));
        return s * scale / nx;
    };

    // stage 1: x transform per row
    std::vector<double> cx(static_cast<std::size_t>(kx_max + 1) * ny);
    std::vector<double> sx;
    for (int j = 0; j < ny; ++j)
        for (int k = 0; k <= kx_max; ++k)
            cx[static_cast<std::size_t>(k) * ny + j] = xrow_coef(cosk, k, j);
    if (!square) {
        sx.resize(cx.size());
        for (int j = 0; j < ny; ++j)
            for (int k = 0; k <= kx_max; ++k)
                sx[static_cast<std::size_t>(k) * ny + j] = k == 0 ? 0.0 : xrow_coef(sink, k, j);
    }

    // stage 2: y cosine transform per k
    auto ycoef = [&](const std::vector<double>& data, int k, int m) {
        double s = 0.0;
        for (int j = 0; j < ny; ++j)
            s += cosm[static_cast<std::size_t>(m) * ny + j] *
                 data[static_cast<std::size_t>(k) * ny + j];
        return s * (m == 0 ? 1.0 : 2.0) / ny;
    };

    double peak = 0.0;
    std::vector<SpectralMode> raw;
    for (int k = 0; k <= kx_max; ++k) {
        for (int m = 0; m < ny; ++m) {
            if (k == 0 && m == 0) continue;
            double cc = ycoef(cx, k, m);
            peak = std::max(peak, std::fabs(cc));
            if (cc != 0.0) raw.push_back({k, m, false, cc});
            if (!square && k > 0) {
                double cs = ycoef(sx, k, m);
                peak = std::max(peak, std::fabs(cs));
                if (cs != 0.0) raw.push_back({k, m, true, cs});
            }
        }
    }

    // convert (rho - 1) coefficients to potential coefficients and drop the
    // negligible tail; the dropped mass bounds the divergence residual
    std::vector<SpectralMode> modes;
    double dropped = 0.0;
    for (auto& m : raw) {
        if (std::fabs(m.c) < opts.mode_cutoff * std::max(peak, 1.0)) {
            dropped += std::fabs(m.c);
            continue;
        }
        SpectralMode u = m;
        u.c = -m.c / lambda_of(rho.kind, m);
        modes.push_back(u);
    }
    if (dropped > opts.residual_tol)
        fail("solver-residual", "dropped spectral mass " + std::to_string(dropped) +
                                    " exceeds the residual budget");
    return DivergenceSolution(rho.kind, std::move(modes), dropped);
}

MoserFlow::MoserFlow(DivergenceSolution sol, int steps)
    : kind_(sol.domain()), sol_(std::move(sol)), steps_(steps) {
    if (steps_ < 1) fail("domain", "flow needs at least one step");
}

Vec2 MoserFlow::map(Vec2 p, double* det) const {
    // joint RK4 on (position, 2x2 variational matrix)
    struct State {
        Vec2 x;
        Mat2 M;
    };
    auto vel = [&](double t, Vec2 x, Mat2& dv) -> Vec2 {
        double r = sol_.rho(x);
        double rt = (1.0 - t) + t * r;
        if (rt < 1e-6) fail("flow-blowup", "interpolated density vanished along the flow");
        Vec2 w = sol_.w(x);
        Mat2 Dw = sol_.dw(x);
        Vec2 gr = sol_.grad_rho(x);
        double inv = 1.0 / rt;
        // X_t = -w/rt; DX_t = -Dw/rt + t w (x) grad_rho / rt^2
        dv = {-Dw.xx * inv + t * w.x * gr.x * inv * inv,
              -Dw.xy * inv + t * w.x * gr.y * inv * inv,
              -Dw.yx * inv + t * w.y * gr.x * inv * inv,
              -Dw.yy * inv + t * w.y * gr.y * inv * inv};
        return {-w.x * inv, -w.y * inv};
    };

    State s{p, Mat2::identity()};
    double h = 1.0 / steps_;
    for (int k = 0; k < steps_; ++k) {
        double t0 = k * h;
        Mat2 dv;
        auto eval = [&](double t, const State& st, State& out) {
            Vec2 v = vel(t, st.x, dv);
            out.x = v;
            out.M = dv.mul(st.M);
        };
        State k1, k2, k3, k4, tmp;
        eval(t0, s, k1);
        tmp = {s.x + k1.x * (h / 2),
               {s.M.xx + k1.M.xx * (h / 2), s.M.xy + k1.M.xy * (h / 2),
                s.M.yx + k1.M.yx * (h / 2), s.M.yy + k1.M.yy * (h / 2)}};
        eval(t0 + h / 2, tmp, k2);
        tmp = {s.x + k2.x * (h / 2),
               {s.M.xx + k2.M.xx * (h / 2), s.M.xy + k2.M.xy * (h / 2),
                s.M.yx + k2.M.yx * (h / 2), s.M.yy + k2.M.yy * (h / 2)}};
        eval(t0 + h / 2, tmp, k3);
        tmp = {s.x + k3.x * h,
               {s.M.xx + k3.M.xx * h, s.M.xy + k3.M.xy * h, s.M.yx + k3.M.yx * h,
                s.M.yy + k3.M.yy * h}};
        eval(t0 + h, tmp, k4);
        s.x = s.x + (k1.x + k2.x * 2 + k3.x * 2 + k4.x) * (h / 6);
        s.M = {s.M.xx + (k1.M.xx + 2 * k2.M.xx + 2 * k3.M.xx + k4.M.xx) * (h / 6),
               s.M.xy + (k1.M.xy + 2 * k2.M.xy + 2 * k3.M.xy + k4.M.xy) * (h / 6),
               s.M.yx + (k1.M.yx + 2 * k2.M.yx + 2 * k3.M.yx + k4.M.yx) * (h / 6),
               s.M.yy + (k1.M.yy + 2 * k2.M.yy + 2 * k3.M.yy + k4.M.yy) * (h / 6)};
        s.x.y = std::clamp(s.x.y, 0.0, 1.0);
        if (kind_ == DomainKind::Square) s.x.x = std::clamp(s.x.x, 0.0, 1.0);
    }
    if (det) *det = s.M.det();
    return s.x;
}

MoserFlow moser_flow(const DensityField& rho, int steps, const SolveOptions& opts) {
    return MoserFlow(solve_divergence(rho, opts), steps);
}

double pullback_residual(const MoserFlow& flow, int n, double tol) {
    double worst = 0.0;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            Vec2 p{static_cast<double>(i) / n, static_cast<double>(j) / n};
            double det = 1.0;
            Vec2 q = flow.map(p, &det);
            double r = flow.field().rho(q) * det - 1.0;
            worst = std::max(worst, std::fabs(r));
        }
    }
    if (tol > 0.0 && worst > tol)
        fail("verification-failure",
             "pullback residual " + std::to_string(worst) + " above " + std::to_string(tol));
    return worst;
}

double boundary_residual(const MoserFlow& flow, int n) {
    double worst = 0.0;
    for (int i = 0; i <= n; ++i) {
        for (double y : {0.0, 1.0}) {
            Vec2 q = flow.map({static_cast<double>(i) / n, y});
            worst = std::max(worst, std::fabs(q.y - y));
        }
    }
    return worst;
}

LineRearrangement::LineRearrangement(std::function<double(double)> rho, int quad_nodes)
    : rho_(std::move(rho)) {
    if (quad_nodes < 8) fail("domain", "rearrangement needs more quadrature nodes");
    // composite trapezoid cumulative integral of rho on [0,1]
    cum_.resize(static_cast<std::size_t>(quad_nodes) + 1);
    cum_[0] = 0.0;
    double h = 1.0 / quad_nodes;
    double prev = rho_(0.0);
    if (prev <= 0.0) fail("non-positive-density", "rearrangement density must be positive");
    for (int i = 1; i <= quad_nodes; ++i) {
        double cur = rho_(i * h);
        if (cur <= 0.0) fail("non-positive-density", "rearrangement density must be positive");
        cum_[static_cast<std::size_t>(i)] = cum_[static_cast<std::size_t>(i) - 1] +
                                            0.5 * h * (prev + cur);
        prev = cur;
    }
    total_ = cum_.back();
}

double LineRearrangement::eval(double u) const {
    double shift = std::floor(u);
    double frac = u - shift;
    // target cumulative mass; invert the monotone table then refine by Newton
    double target = frac * total_;
    auto it = std::lower_bound(cum_.begin(), cum_.end(), target);
    std::size_t hi = std::min<std::size_t>(std::distance(cum_.begin(), it), cum_.size() - 1);
    std::size_t lo = hi > 0 ? hi - 1 : 0;
    double n = static_cast<double>(cum_.size() - 1);
    double x;
    if (cum_[hi] == cum_[lo])
        x = static_cast<double>(lo) / n;
    else
        x = (static_cast<double>(lo) + (target - cum_[lo]) / (cum_[hi] - cum_[lo])) / n;
    for (int it2 = 0; it2 < 3; ++it2) {
        // cum(x) via local trapezoid correction around the table
        double fx = std::clamp(x, 0.0, 1.0) * n;
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(fx), cum_.size() - 2);
        double base = cum_[k];
        double x0 = static_cast<double>(k) / n;
        double val = base + 0.5 * (std::clamp(x, 0.0, 1.0) - x0) *
                                (rho_(x0) + rho_(std::clamp(x, 0.0, 1.0)));
        double err = val - target;
        x -= err / rho_(std::clamp(x, 0.0, 1.0));
        x = std::clamp(x, 0.0, 1.0);
    }
    return shift + x;
}

double LineRearrangement::deriv(double u) const {
    double x = eval(u) - std::floor(u);
    return total_ / rho_(std::clamp(x, 0.0, 1.0));
}

}  // namespace pseudorot
