#pragma once

#include <functional>
#include <optional>

#include "core/geometry.hpp"
#include "core/quadrature.hpp"

namespace liouville::green {

using quadrature::QuadratureSpec;

struct Disk {
    Vec2 center{0.0, 0.0};
    double radius = 1.0;
};

// Interior density for the volume potential.  A declared log singularity
// means f(y) - strength * (-(1/2pi) log|y - point|) stays bounded near the
// point; the singular part is then integrated in closed form.
struct Density {
    std::function<double(Vec2)> f;
    struct LogSingularity {
        Vec2 point;
        double strength;
    };
    std::optional<LogSingularity> singularity;

    static Density constant(double c) {
        return {[c](Vec2) { return c; }, std::nullopt};
    }
    static Density zero() { return constant(0.0); }
};

struct BoundaryTrace {
    std::function<double(Vec2)> g;

    static BoundaryTrace constant(double c) {
        return {[c](Vec2) { return c; }};
    }
};

// Dirichlet Green machinery of a disk.  In coordinates z = (p - center)/R:
//
//   G(x,y) = (1/2pi) log( |1 - conj(zx) zy| / |zx - zy| )          (G > 0)
//   H(x,y) = G + (1/2pi) log|x-y| = (1/2pi)( log|1 - conj(zx) zy| + log R )
//   P(x,s) = (R^2 - |x-c|^2) / (2 pi R |x - s|^2),   integral over ds = 1
//
// P is the outward normal derivative -dG/dn(s).
class GreenKernel {
public:
    explicit GreenKernel(Disk d = {});

    const Disk& disk() const { return d_; }

    double green(Vec2 x, Vec2 y) const;        // x != y, both interior
    double regular_part(Vec2 x, Vec2 y) const; // continuous across x == y
    double poisson(Vec2 x, Vec2 s) const;      // s on the boundary circle
    double poisson_angle(Vec2 x, double theta) const;

    // u(x) = int_B G(x,y) f(y) dy + int_dB P(x,s) g(s) ds, the solution of
    // -lap(u) = f with trace g.  The volume term uses a polar product rule
    // centered at x with radial panels graded against the log kernel; both
    // terms are refined until two levels agree to q.abs_tol, else
    // ToleranceError carries the best value.
    double represent(const Density& f, const BoundaryTrace& g, Vec2 x,
                     const QuadratureSpec& q = {}) const;

private:
    void check_interior(Vec2 p, const char* who) const;
    double volume_term(const Density& f, Vec2 x, const QuadratureSpec& q) const;
    double boundary_term(const std::function<double(Vec2)>& g, Vec2 x,
                         const QuadratureSpec& q) const;
    // int_B G(x,y) * (-(1/2pi) log|y-p|) dy in closed form (up to a spectral
    // boundary integral); p interior, p != x.
    double newtonian_against_green(Vec2 x, Vec2 p, const QuadratureSpec& q) const;

    Disk d_;
};

// int over B(y0,R) of -(1/2pi) log|y0 - y| rho(y) dy by the polar product
// rule centered at y0 (the kernel's singularity sits at the rule's center, so
// the graded radial panels integrate rho smooth or log-singular at y0).
double log_potential(Vec2 y0, double R, const Density& rho, const QuadratureSpec& q = {});

} // namespace liouville::green
