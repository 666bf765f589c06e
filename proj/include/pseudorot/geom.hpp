#pragma once

#include <cmath>

namespace pseudorot {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
};

// Jacobian d(out)/d(in), row major.
struct Mat2 {
    double xx = 1.0, xy = 0.0;
    double yx = 0.0, yy = 1.0;

    static Mat2 identity() { return {}; }

    Vec2 apply(Vec2 v) const { return {xx * v.x + xy * v.y, yx * v.x + yy * v.y}; }
    Mat2 mul(const Mat2& o) const {
        return {xx * o.xx + xy * o.yx, xx * o.xy + xy * o.yy,
                yx * o.xx + yy * o.yx, yx * o.xy + yy * o.yy};
    }
    double det() const { return xx * yy - xy * yx; }
    Mat2 inverse() const {
        double d = det();
        return {yy / d, -xy / d, -yx / d, xx / d};
    }
    double max_abs() const {
        return std::max(std::max(std::fabs(xx), std::fabs(xy)),
                        std::max(std::fabs(yx), std::fabs(yy)));
    }
};

// distance of x to the nearest integer, in [0, 1/2]
inline double circle_norm(double x) {
    double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

inline double wrap01(double x) {
    double f = x - std::floor(x);
    return f == 1.0 ? 0.0 : f;
}

// signed representative of x mod 1 in [-1/2, 1/2)
inline double wrap_half(double x) {
    double f = x - std::floor(x + 0.5);
    return f;
}

// metric on the annulus R/Z x [0,1]
inline double annulus_distance(Vec2 p, Vec2 q) {
    return std::hypot(circle_norm(p.x - q.x), p.y - q.y);
}

}  // namespace pseudorot
