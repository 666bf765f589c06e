#include "pseudorot/curve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace pseudorot {

namespace {

double seg_seg_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    // standard 2D segment-segment distance
    auto clamp01 = [](double t) { return std::clamp(t, 0.0, 1.0); };
    Vec2 d1 = a1 - a0, d2 = b1 - b0, r = a0 - b0;
    double A = d1.x * d1.x + d1.y * d1.y;
    double E = d2.x * d2.x + d2.y * d2.y;
    double F = d2.x * r.x + d2.y * r.y;
    double s = 0.0, t = 0.0;
    if (A <= 1e-30 && E <= 1e-30) return r.norm();
    if (A <= 1e-30) {
        t = clamp01(F / E);
    } else {
        double C = d1.x * r.x + d1.y * r.y;
        if (E <= 1e-30) {
            s = clamp01(-C / A);
        } else {
            double B = d1.x * d2.x + d1.y * d2.y;
            double den = A * E - B * B;
            if (den > 1e-30) s = clamp01((B * F - C * E) / den);
            t = (B * s + F) / E;
            if (t < 0.0) {
                t = 0.0;
                s = clamp01(-C / A);
            } else if (t > 1.0) {
                t = 1.0;
                s = clamp01((B - C) / A);
            }
        }
    }
    Vec2 p = a0 + d1 * s, q = b0 + d2 * t;
    return (p - q).norm();
}

double polyline_distance_shifted(const std::vector<Vec2>& a, const std::vector<Vec2>& b,
                                 double shift) {
    double best = 1e300;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        for (std::size_t j = 0; j + 1 < b.size(); ++j) {
            Vec2 b0{b[j].x + shift, b[j].y}, b1{b[j + 1].x + shift, b[j + 1].y};
            // cheap reject on bounding intervals
            double alo = std::min(a[i].x, a[i + 1].x), ahi = std::max(a[i].x, a[i + 1].x);
            double blo = std::min(b0.x, b1.x), bhi = std::max(b0.x, b1.x);
            double gap = std::max(blo - ahi, alo - bhi);
            if (gap > best) continue;
            double ylo = std::min(a[i].y, a[i + 1].y), yhi = std::max(a[i].y, a[i + 1].y);
            double bylo = std::min(b0.y, b1.y), byhi = std::max(b0.y, b1.y);
            double ygap = std::max(bylo - yhi, ylo - byhi);
            if (ygap > best) continue;
            best = std::min(best, seg_seg_distance(a[i], a[i + 1], b0, b1));
        }
    }
    return best;
}

}  // namespace

Curve::Curve(std::vector<Vec2> samples) : pts_(std::move(samples)) { validate(); }

void Curve::validate() const {
    if (pts_.size() < 2) fail("domain", "curve needs at least two samples");
    if (std::fabs(pts_.front().y) > 1e-12 || std::fabs(pts_.back().y - 1.0) > 1e-12)
        fail("domain", "curve must run from y=0 to y=1");
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        if ((pts_[i + 1] - pts_[i]).norm() == 0.0) fail("domain", "repeated curve sample");
    }
}

Curve Curve::vertical(double x, int samples) {
    std::vector<Vec2> pts;
    for (int i = 0; i < samples; ++i)
        pts.push_back({x, static_cast<double>(i) / (samples - 1)});
    return Curve(std::move(pts));
}

Curve Curve::graph(double c, const std::vector<double>& offsets) {
    std::vector<Vec2> pts;
    int n = static_cast<int>(offsets.size());
    for (int i = 0; i < n; ++i)
        pts.push_back({c + offsets[i], static_cast<double>(i) / (n - 1)});
    return Curve(std::move(pts));
}

Vec2 Curve::at(double t) const {
    t = std::clamp(t, 0.0, 1.0);
    double g = t * (pts_.size() - 1);
    auto idx = static_cast<std::ptrdiff_t>(std::floor(g));
    if (idx >= static_cast<std::ptrdiff_t>(pts_.size()) - 1)
        idx = static_cast<std::ptrdiff_t>(pts_.size()) - 2;
    double u = g - idx;
    auto P = [&](std::ptrdiff_t k) {
        k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(pts_.size()) - 1);
        return pts_[static_cast<std::size_t>(k)];
    };
    Vec2 p0 = P(idx - 1), p1 = P(idx), p2 = P(idx + 1), p3 = P(idx + 2);
    auto cr = [&](double f0, double f1, double f2, double f3) {
        return f1 + 0.5 * u * (f2 - f0 + u * (2 * f0 - 5 * f1 + 4 * f2 - f3 +
                                              u * (3 * (f1 - f2) + f3 - f0)));
    };
    return {cr(p0.x, p1.x, p2.x, p3.x), cr(p0.y, p1.y, p2.y, p3.y)};
}

double Curve::x_at_height(double y) const {
    y = std::clamp(y, 0.0, 1.0);
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        double y0 = pts_[i].y, y1 = pts_[i + 1].y;
        if ((y0 <= y && y <= y1) || (y1 <= y && y <= y0)) {
            if (y1 == y0) return pts_[i].x;
            double u = (y - y0) / (y1 - y0);
            return pts_[i].x + u * (pts_[i + 1].x - pts_[i].x);
        }
    }
    return pts_.back().x;
}

Curve Curve::mapped(const AnnulusMap& f) const {
    std::vector<Vec2> out;
    out.reserve(pts_.size());
    for (const Vec2& p : pts_) out.push_back(f.lift(p));
    return Curve(std::move(out));
}

Curve Curve::shifted(double dx) const {
    std::vector<Vec2> out = pts_;
    for (auto& p : out) p.x += dx;
    return Curve(std::move(out));
}

Curve Curve::resampled(int n) const {
    std::vector<Vec2> out;
    for (int i = 0; i < n; ++i) out.push_back(at(static_cast<double>(i) / (n - 1)));
    out.front().y = 0.0;
    out.back().y = 1.0;
    return Curve(std::move(out));
}

double Curve::polyline_length() const {
    double len = 0.0;
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) len += (pts_[i + 1] - pts_[i]).norm();
    return len;
}

Curve Curve::arclength_resampled(int n, double* length) const {
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i)
        cum.push_back(cum.back() + (pts_[i + 1] - pts_[i]).norm());
    double L = cum.back();
    if (length) *length = L;
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n));
    std::size_t seg = 0;
    for (int i = 0; i < n; ++i) {
        double s = L * i / (n - 1);
        while (seg + 2 < cum.size() && cum[seg + 1] < s) ++seg;
        double ds = cum[seg + 1] - cum[seg];
        double u = ds > 0 ? (s - cum[seg]) / ds : 0.0;
        out.push_back(pts_[seg] + (pts_[seg + 1] - pts_[seg]) * u);
    }
    out.front() = pts_.front();
    out.back() = pts_.back();
    return Curve(std::move(out));
}

double Curve::boundary_angle_defect() const {
    Vec2 t0 = pts_[1] - pts_[0];
    Vec2 t1 = pts_[pts_.size() - 1] - pts_[pts_.size() - 2];
    double a0 = std::fabs(std::atan2(t0.x, t0.y));
    double a1 = std::fabs(std::atan2(t1.x, t1.y));
    return std::max(a0, a1);
}

Curve Curve::orthogonalized(double blend_width) const {
    // pull the x-coordinate to a constant inside the blend strips so the
    // curve leaves the boundary vertically
    std::vector<Vec2> out = pts_;
    double x0 = pts_.front().x, x1 = pts_.back().x;
    auto smooth = [](double t) {  // quintic smoothstep
        t = std::clamp(t, 0.0, 1.0);
        return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    };
    for (auto& p : out) {
        if (p.y < blend_width) {
            double w = smooth(p.y / blend_width);
            p.x = x0 + w * (p.x - x0);
        } else if (p.y > 1.0 - blend_width) {
            double w = smooth((1.0 - p.y) / blend_width);
            p.x = x1 + w * (p.x - x1);
        }
    }
    return Curve(std::move(out));
}

bool Curve::is_simple(double tol) const {
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
        for (std::size_t j = i + 2; j + 1 < pts_.size(); ++j) {
            double d = seg_seg_distance(pts_[i], pts_[i + 1], pts_[j], pts_[j + 1]);
            if (d < tol) return false;
        }
    }
    return true;
}

double lifted_curve_distance(const Curve& a, const Curve& b) {
    return polyline_distance_shifted(a.samples(), b.samples(), 0.0);
}

double curve_distance(const Curve& a, const Curve& b) {
    // reduce by the deck shift aligning the mean x positions, then check the
    // neighbouring shifts as well
    double ma = 0.0, mb = 0.0;
    for (const auto& p : a.samples()) ma += p.x;
    for (const auto& p : b.samples()) mb += p.x;
    ma /= static_cast<double>(a.size());
    mb /= static_cast<double>(b.size());
    double base = std::round(ma - mb);
    double best = 1e300;
    for (double k : {base - 1.0, base, base + 1.0})
        best = std::min(best, polyline_distance_shifted(a.samples(), b.samples(), k));
    return best;
}

double curve_sup_distance(const Curve& a, const Curve& b) {
    double sup = 0.0;
    int n = static_cast<int>(std::max(a.size(), b.size()));
    for (int i = 0; i < n; ++i) {
        double t = static_cast<double>(i) / (n - 1);
        sup = std::max(sup, annulus_distance(a.at(t), b.at(t)));
    }
    return sup;
}

CurveOrder curve_order(const Curve& a, const Curve& b, double tol) {
    if (lifted_curve_distance(a, b) < tol) return CurveOrder::Intersecting;
    bool left0 = a.samples().front().x < b.samples().front().x;
    bool left1 = a.samples().back().x < b.samples().back().x;
    if (left0 != left1) return CurveOrder::Intersecting;  // should not happen when disjoint
    return left0 ? CurveOrder::Left : CurveOrder::Right;
}

QGoodWitness is_q_good(const AnnulusMap& f, const Curve& gamma, int Q, double tol) {
    if (Q < 2) fail("domain", "Q-goodness needs Q >= 2");
    QGoodWitness w;
    w.iterates.reserve(static_cast<std::size_t>(Q));
    w.iterates.push_back(gamma);
    for (int j = 1; j < Q; ++j) w.iterates.push_back(w.iterates.back().mapped(f));
    w.min_separation = 1e300;
    w.good = true;
    for (int i = 0; i < Q; ++i) {
        for (int j = i + 1; j < Q; ++j) {
            double d = curve_distance(w.iterates[static_cast<std::size_t>(i)],
                                      w.iterates[static_cast<std::size_t>(j)]);
            if (d < w.min_separation) w.min_separation = d;
            if (d < tol && w.good) {
                w.good = false;
                w.first_i = i;
                w.first_j = j;
            }
        }
    }
    return w;
}

Curve find_brouwer_curve(const AnnulusMap& f, const BrouwerSearchOptions& opts) {
    double best_sep = -1.0;
    std::optional<Curve> best;

    auto consider = [&](const Curve& c) {
        auto w = is_q_good(f, c, opts.Q, opts.tol);
        if (w.min_separation > best_sep) {
            best_sep = w.min_separation;
            best = c;
        }
        return w.good;
    };

    // phase 1: vertical lines over a grid of base points
    std::optional<Curve> winner;
    double winner_sep = -1.0;
    for (int k = 0; k < opts.vertical_candidates; ++k) {
        double c = static_cast<double>(k) / opts.vertical_candidates;
        Curve cand = Curve::vertical(c, opts.samples);
        auto w = is_q_good(f, cand, opts.Q, opts.tol);
        if (w.good && w.min_separation > winner_sep) {
            winner_sep = w.min_separation;
            winner = cand;
        }
        if (w.min_separation > best_sep) {
            best_sep = w.min_separation;
            best = cand;
        }
    }
    if (winner) return *winner;

    // phase 2: graph curves x = c + u(y) over a smooth basis, random small
    // coefficients, keep the best separation
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> uc(0.0, 1.0), ua(-0.2, 0.2);
    for (int attempt = 0; attempt < opts.graph_attempts; ++attempt) {
        double c = uc(rng);
        double a1 = ua(rng), a2 = ua(rng), a3 = ua(rng);
        std::vector<double> offsets(static_cast<std::size_t>(opts.samples));
        for (int i = 0; i < opts.samples; ++i) {
            double y = static_cast<double>(i) / (opts.samples - 1);
            offsets[static_cast<std::size_t>(i)] = a1 * std::sin(M_PI * y) +
                                                   a2 * y * (1.0 - y) +
                                                   a3 * std::sin(2.0 * M_PI * y) * 0.5;
        }
        Curve cand = Curve::graph(c, offsets);
        if (consider(cand)) return cand;
    }
    fail("not-found", "no " + std::to_string(opts.Q) +
                          "-good curve found; best separation " + std::to_string(best_sep));
}

Region::Region(Curve left, Curve right) : left_(std::move(left)), right_(std::move(right)) {
    // boundary polygon: left curve up, top edge, right curve down, bottom edge
    poly_ = left_.samples();
    auto rs = right_.samples();
    for (auto it = rs.rbegin(); it != rs.rend(); ++it) poly_.push_back(*it);
    minx_ = 1e300;
    maxx_ = -1e300;
    for (const auto& p : poly_) {
        minx_ = std::min(minx_, p.x);
        maxx_ = std::max(maxx_, p.x);
    }
}

bool Region::contains(Vec2 p, double tol) const {
    // reduce the x coordinate near the polygon
    double mid = 0.5 * (minx_ + maxx_);
    p.x -= std::round(p.x - mid);
    if (p.x < minx_ - tol || p.x > maxx_ + tol) return false;
    // even-odd crossing test with horizontal ray; closed polygon
    bool inside = false;
    std::size_t n = poly_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Vec2& a = poly_[j];
        const Vec2& b = poly_[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            double xint = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < xint) inside = !inside;
        }
    }
    if (inside) return true;
    if (tol > 0.0) {
        // point close to the boundary counts as inside up to tol
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (seg_seg_distance(poly_[i], poly_[i + 1], p, p) <= tol) return true;
        }
        if (seg_seg_distance(poly_[n - 1], poly_[0], p, p) <= tol) return true;
    }
    return false;
}

double Region::area() const {
    double twice = 0.0;
    std::size_t n = poly_.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        twice += (poly_[j].x + poly_[i].x) * (poly_[i].y - poly_[j].y);
    return std::fabs(0.5 * twice);
}

std::string curve_to_csv(const Curve& c) {
    std::ostringstream out;
    out << "t,x,y\n";
    const auto& pts = c.samples();
    char buf[96];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double t = static_cast<double>(i) / (pts.size() - 1);
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", t, pts[i].x, pts[i].y);
        out << buf;
    }
    return out.str();
}

Curve curve_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);  // header
    std::vector<Vec2> pts;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double t, x, y;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &t, &x, &y) == 3) pts.push_back({x, y});
    }
    return Curve(std::move(pts));
}

}  // namespace pseudorot
