#pragma once

#include <functional>
#include <optional>

#include "core/families.hpp"
#include "core/geometry.hpp"
#include "core/sampled_field.hpp"

namespace liouville::solver {

// Solutions of -lap(u) = V e^u and of the coercive Green problem.

struct SolveReport {
    fields::SampledField solution;
    bool converged = false;
    int iterations = 0;
    // IVP/BVP: max-norm of the step-doubling defect per unit length, the
    // integrator's own consistency measure.  FD2D: max-norm of the discrete
    // nonlinear residual.
    double residual_norm = 0.0;
    double u0 = 0.0; // center value (BVP reports the value found by shooting)
};

// Integration aborts once u exceeds this bound (e^u would overflow long
// before IEEE infinity; 700 keeps exp(u) finite).
inline constexpr double kOverflowGuard = 700.0;

// Radial shooting problem u'' + u'/r + V(r) e^u = 0, u(0) = u0, u'(0) = 0,
// integrated node-to-node with classical RK4 plus step doubling; the first
// interval uses the series start u ~ u0 - V(0)e^{u0} r^2/4 (the radial
// Laplacian limit at the origin is 2 u''(0)).  BlowupError past the guard.
SolveReport solve_radial_ivp(double u0, const families::RadialWeight& V, const RadialGrid& grid);

// Two-branch boundary value problem: find u0 with u(r_max; u0) = g.  The
// shooting map is scanned over u0 in [g - 60, g + 120]; Low takes the
// smallest bracketed root, High the largest; bracketed roots are resolved to
// 1e-8.  When the scan finds no sign change the maximum of the shooting map
// is located instead (golden section plus a parabolic vertex fit): a positive
// maximum yields the two enclosing roots, a maximum within 1e-5 of zero is a
// tangent contact where both branches coincide, and anything lower raises
// NoSolutionError.
enum class Branch { Low, High };
SolveReport solve_radial_bvp(double boundary_value, const families::RadialWeight& V, Branch branch,
                             const RadialGrid& grid);

// Five-point damped Newton for -lap(u) = V(x) e^u on a rectangle with
// Dirichlet trace g.  Non-convergence after max_newton damped steps returns
// converged = false with the last iterate (no throw).
struct Fd2dOptions {
    double tol = 1e-10;
    int max_newton = 50;
    std::optional<fields::SampledField> init; // default: harmonic extension of g
};
SolveReport solve_fd2d(const RectGrid& grid, const std::function<double(Vec2)>& V,
                       const std::function<double(Vec2)>& g, const Fd2dOptions& opt = {});

// G(0, r_eval) for (-lap + eps(r)) G = delta_0 on B_{r_max}, G(r_max) = 0,
// radially symmetric data.  The delta is carried exactly by the split
// G = -(1/2pi) log r + h with  -lap(h) + eps h = (1/2pi) eps(r) log r  and
// h(r_max) = (1/2pi) log r_max, h'(0) = 0, solved by second-order finite
// differences (tridiagonal).  eps == 0 reproduces (1/2pi) log(r_max/r)
// exactly at the nodes.
double green_coercive_radial(const std::function<double(double)>& eps, double r_eval,
                             const RadialGrid& grid);

} // namespace liouville::solver
