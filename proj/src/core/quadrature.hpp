#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace liouville::quadrature {

// Resolution knobs shared by the disk integrators.  abs_tol drives the
// refinement loop: a result is accepted once two consecutive refinement
// levels agree to abs_tol, otherwise a ToleranceError carries the best value.
struct QuadratureSpec {
    int boundary_nodes = 256; // periodic trapezoid nodes on a circle
    int radial_nodes = 12;    // Gauss-Legendre order per radial segment
    int angular_nodes = 64;   // angular nodes of the polar product rule
    double abs_tol = 1e-8;

    void validate() const {
        if (boundary_nodes < 8 || radial_nodes < 8 || angular_nodes < 8)
            throw DomainError("quadrature spec: node counts must be at least 8");
        if (!(abs_tol > 0.0)) throw DomainError("quadrature spec: abs_tol must be positive");
    }
};

// Geometric grading used against log singularities: segment endpoints
// approach the singular end at ratio 1/2 over 24 levels, so the innermost
// segment has length ~6e-8 of the interval and rho*log(rho) is resolved.
inline constexpr int kGradedLevels = 24;
inline constexpr double kGradedRatio = 0.5;

// Nodes/weights of the n-point Gauss-Legendre rule on [-1,1].
// Computed once per order by Newton iteration on the Legendre recurrence.
const std::vector<std::pair<double, double>>& gauss_legendre(int n);

// Integral of f over [a,b] with Gauss-Legendre panels graded toward `a`.
// Handles integrands with an integrable (log-type) singularity at `a`.
double graded_toward_a(const std::function<double(double)>& f, double a, double b, int order);

// Same grading toward an interior breakpoint list: [a,b] is split at the
// given points and each piece graded toward both of its ends.
double graded_with_breakpoints(const std::function<double(double)>& f, double a, double b,
                               const std::vector<double>& breaks, int order);

// Plain composite Gauss-Legendre over [a,b] (no grading), `panels` pieces.
double composite_gauss(const std::function<double(double)>& f, double a, double b, int order,
                       int panels = 1);

// Adaptive Gauss-Kronrod integral of f over [a,b].  Splits at the supplied
// breakpoints first (piecewise integrands), then refines each piece to
// abs_tol 1e-10 / rel_tol 1e-9.
double adaptive(const std::function<double(double)>& f, double a, double b,
                const std::vector<double>& breaks = {});

// Periodic trapezoid rule of g over [0, 2*pi) with n nodes; spectrally
// accurate for smooth periodic integrands.
double periodic_trapezoid(const std::function<double(double)>& g, int n);

} // namespace liouville::quadrature
