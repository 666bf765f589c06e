#pragma once

#include <functional>
#include <vector>

#include "pseudorot/geom.hpp"

namespace pseudorot {

enum class DomainKind {
    Square,    // Neumann in both directions, basis cos(pi k x) cos(pi m y)
    AnnulusX,  // periodic in x, Neumann in y: {cos,sin}(2 pi k x) cos(pi m y)
};

// Positive density on [0,1]^2, stored at the collocation nodes of the
// spectral solver: x_i = (i+1/2)/nx (square) or i/nx (annulus),
// y_j = (j+1/2)/ny.
struct DensityField {
    DomainKind kind = DomainKind::Square;
    int nx = 0, ny = 0;
    std::vector<double> vals;

    static DensityField sample(DomainKind kind, int nx, int ny,
                               const std::function<double(double, double)>& rho);

    double node_x(int i) const;
    double node_y(int j) const;
    double mean() const;
    void normalize();              // divide by the mean; throws on sign problems
    double min_value() const;
    // max finite-difference derivative magnitude up to order 2 (diagnostic)
    double smoothness_diagnostic() const;
};

struct SpectralMode {
    int kx = 0, ky = 0;
    bool sin_x = false;  // annulus only; y factor is always cos(pi ky y)
    double c = 0.0;
};

// Gradient field w = grad(u) with div w = rho - 1 and zero normal component
// on the boundary, from the spectral Poisson solve Delta u = rho - 1.
class DivergenceSolution {
public:
    DivergenceSolution(DomainKind kind, std::vector<SpectralMode> modes, double residual);

    double u(Vec2 p) const;
    Vec2 w(Vec2 p) const;
    Mat2 dw(Vec2 p) const;
    // density reconstructed from the solved modes: 1 + div w
    double rho(Vec2 p) const;
    Vec2 grad_rho(Vec2 p) const;

    double residual_bound() const { return residual_; }
    std::size_t mode_count() const { return modes_.size(); }
    DomainKind domain() const { return kind_; }

private:
    DomainKind kind_;
    std::vector<SpectralMode> modes_;
    double residual_ = 0.0;
};

struct SolveOptions {
    double mean_tol = 1e-10;        // solvability: |mean - 1| must be below this
    double residual_tol = 1e-8;     // sup bound on |div w - (rho - 1)|
    double mode_cutoff = 1e-13;     // relative magnitude below which modes are dropped
};

DivergenceSolution solve_divergence(const DensityField& rho, const SolveOptions& opts = {});

// Time-1 flow of X_t = -w / ((1-t) + t rho) integrated with fixed-step RK4,
// with the Jacobian determinant transported along the flow. The result h
// satisfies rho(h(x)) det Dh(x) = 1 up to the reported residual.
class MoserFlow {
public:
    MoserFlow(DivergenceSolution sol, int steps);

    Vec2 map(Vec2 p, double* det = nullptr) const;
    int steps() const { return steps_; }
    const DivergenceSolution& field() const { return sol_; }

private:
    DomainKind kind_;
    DivergenceSolution sol_;
    int steps_;
};

MoserFlow moser_flow(const DensityField& rho, int steps = 64, const SolveOptions& opts = {});

// sup over an n x n verification grid of |rho(h(x)) det Dh(x) - 1|, with rho
// evaluated from the solved modes; throws "verification-failure" above tol
// when check is set.
double pullback_residual(const MoserFlow& flow, int n, double tol = 0.0);
// sup over the y in {0,1} circles of the boundary displacement of h
double boundary_residual(const MoserFlow& flow, int n);

// Monotone rearrangement of [0,1]: m(0) = 0, m(1) = 1 and
// m'(u) rho(m(u)) = integral of rho. Used for the separable constant-Jacobian
// correction of charts.
class LineRearrangement {
public:
    LineRearrangement() = default;
    LineRearrangement(std::function<double(double)> rho, int quad_nodes = 1024);

    double eval(double u) const;     // extended by m(u + k) = m(u) + k
    double deriv(double u) const;
    double total() const { return total_; }

private:
    std::function<double(double)> rho_;
    std::vector<double> cum_;  // cumulative integral at nodes
    double total_ = 1.0;
};

}  // namespace pseudorot
