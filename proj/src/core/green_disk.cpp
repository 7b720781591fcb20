#include "core/green_disk.hpp"

#include <cmath>
#include <complex>
#include <limits>

namespace liouville::green {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

using Cplx = std::complex<double>;

Cplx to_cplx(Vec2 v) { return {v.x, v.y}; }

// Particular solution of -lap(v) = -(1/2pi) log|w|, radial:
//   v(t) = (1/2pi)(t^2 log t / 4 - t^2 / 4),  v(0) = 0.
double newtonian_particular(double t) {
    if (t <= 0.0) return 0.0;
    return (t * t * std::log(t) / 4.0 - t * t / 4.0) / kTwoPi;
}

// One pass of the polar product rule centered at x over the disk: for each of
// n_ang rays, radial Gauss panels of order n_rad graded toward the center,
// with optional extra panel splits at the given distances.
double polar_pass(Vec2 x, Vec2 c, double R, const std::function<double(double, Vec2)>& integrand,
                  int n_ang, int n_rad, const std::vector<double>& radial_breaks) {
    const Vec2 xc = x - c;
    double total = 0.0;
    for (int k = 0; k < n_ang; ++k) {
        const double th = kTwoPi * k / n_ang;
        const Vec2 e{std::cos(th), std::sin(th)};
        const double xe = xc.dot(e);
        const double rho_max = -xe + std::sqrt(std::max(0.0, xe * xe + R * R - xc.norm2()));
        if (!(rho_max > 0.0)) continue;
        const auto line = [&](double rho) { return integrand(rho, x + e * rho) * rho; };
        total += quadrature::graded_with_breakpoints(line, 0.0, rho_max, radial_breaks, n_rad);
    }
    return total * (kTwoPi / n_ang);
}

// Drive `level` until two consecutive results agree to tol; returns the finer.
double refine_to_tol(const std::function<double(int)>& level, double tol, const char* what) {
    double prev = level(0);
    double best = prev, est = std::numeric_limits<double>::infinity();
    for (int round = 1; round <= 3; ++round) {
        const double cur = level(round);
        est = std::fabs(cur - prev);
        best = cur;
        if (est <= tol) return cur;
        prev = cur;
    }
    throw ToleranceError(std::string(what) + ": refinement stalled above abs_tol", best, est);
}

} // namespace

GreenKernel::GreenKernel(Disk d) : d_(d) {
    if (!(d.radius > 0.0)) throw DomainError("green: disk radius must be positive");
}

void GreenKernel::check_interior(Vec2 p, const char* who) const {
    if (!((p - d_.center).norm() < d_.radius))
        throw DomainError(std::string("green: ") + who + " must lie strictly inside the disk");
}

double GreenKernel::green(Vec2 x, Vec2 y) const {
    check_interior(x, "x");
    check_interior(y, "y");
    const Cplx zx = to_cplx(x - d_.center) / d_.radius;
    const Cplx zy = to_cplx(y - d_.center) / d_.radius;
    const double sep = std::abs(zx - zy);
    if (sep == 0.0) throw SingularityError("green: evaluation on the diagonal x == y");
    return std::log(std::abs(1.0 - std::conj(zx) * zy) / sep) / kTwoPi;
}

double GreenKernel::regular_part(Vec2 x, Vec2 y) const {
    const double rx = (x - d_.center).norm(), ry = (y - d_.center).norm();
    if (!(rx <= d_.radius && ry <= d_.radius))
        throw DomainError("green: regular part needs both points in the closed disk");
    const Cplx zx = to_cplx(x - d_.center) / d_.radius;
    const Cplx zy = to_cplx(y - d_.center) / d_.radius;
    return (std::log(std::abs(1.0 - std::conj(zx) * zy)) + std::log(d_.radius)) / kTwoPi;
}

double GreenKernel::poisson(Vec2 x, Vec2 s) const {
    check_interior(x, "x");
    const double R = d_.radius;
    if (std::fabs((s - d_.center).norm() - R) > 1e-9 * R)
        throw DomainError("green: poisson kernel needs s on the boundary circle");
    const double num = R * R - (x - d_.center).norm2();
    return num / (kTwoPi * R * (x - s).norm2());
}

double GreenKernel::poisson_angle(Vec2 x, double theta) const {
    const Vec2 s{d_.center.x + d_.radius * std::cos(theta),
                 d_.center.y + d_.radius * std::sin(theta)};
    return poisson(x, s);
}

double GreenKernel::boundary_term(const std::function<double(Vec2)>& g, Vec2 x,
                                  const QuadratureSpec& q) const {
    const double R = d_.radius;
    const auto pass = [&](int round) {
        const int n = q.boundary_nodes << round;
        return quadrature::periodic_trapezoid(
            [&](double th) {
                const Vec2 s{d_.center.x + R * std::cos(th), d_.center.y + R * std::sin(th)};
                return poisson(x, s) * g(s) * R;
            },
            n);
    };
    return refine_to_tol(pass, 0.5 * q.abs_tol, "represent boundary term");
}

double GreenKernel::newtonian_against_green(Vec2 x, Vec2 p, const QuadratureSpec& q) const {
    // W solves -lap(W) = -(1/2pi) log|y-p| on the disk with W = 0 on the
    // boundary: W = v(|x-p|) + harmonic extension of -v(|s-p|).
    const auto pass = [&](int round) {
        const int n = q.boundary_nodes << round;
        return quadrature::periodic_trapezoid(
            [&](double th) {
                const Vec2 s{d_.center.x + d_.radius * std::cos(th),
                             d_.center.y + d_.radius * std::sin(th)};
                return poisson(x, s) * (-newtonian_particular((s - p).norm())) * d_.radius;
            },
            n);
    };
    const double h = refine_to_tol(pass, 0.25 * q.abs_tol, "singular model boundary term");
    return newtonian_particular((x - p).norm()) + h;
}

double GreenKernel::volume_term(const Density& f, Vec2 x, const QuadratureSpec& q) const {
    std::function<double(Vec2)> freg = f.f;
    double closed_form = 0.0;
    std::vector<double> breaks;

    if (f.singularity) {
        const Vec2 p = f.singularity->point;
        const double strength = f.singularity->strength;
        check_interior(p, "density singularity");
        const double d = (p - x).norm();
        if (d > 1e-12) {
            // Split off strength * (-(1/2pi) log|y-p|); the remainder is
            // bounded and the split part pairs with G in closed form.
            closed_form = strength * newtonian_against_green(x, p, q);
            const auto base = f.f;
            freg = [base, p, strength](Vec2 y) {
                const double t = (y - p).norm();
                return base(y) - strength * (-std::log(t) / kTwoPi);
            };
            breaks.push_back(d);
        }
        // p == x: rho log^2(rho) is still integrable by the graded panels, so
        // integrate the density as-is.
    }

    const auto pass = [&](int round) {
        const int n_ang = q.angular_nodes << round;
        const int n_rad = q.radial_nodes + 4 * round;
        return polar_pass(
            x, d_.center, d_.radius,
            [&](double, Vec2 y) { return green(x, y) * freg(y); }, n_ang, n_rad, breaks);
    };
    return closed_form + refine_to_tol(pass, 0.5 * q.abs_tol, "represent volume term");
}

double GreenKernel::represent(const Density& f, const BoundaryTrace& g, Vec2 x,
                              const QuadratureSpec& q) const {
    q.validate();
    check_interior(x, "x");
    return volume_term(f, x, q) + boundary_term(g.g, x, q);
}

double log_potential(Vec2 y0, double R, const Density& rho, const QuadratureSpec& q) {
    q.validate();
    if (!(R > 0.0)) throw DomainError("log_potential: radius must be positive");

    std::vector<double> breaks;
    if (rho.singularity) {
        const double d = (rho.singularity->point - y0).norm();
        if (d > 1e-12 && d < R) breaks.push_back(d);
    }
    const auto pass = [&](int round) {
        const int n_ang = q.angular_nodes << round;
        const int n_rad = q.radial_nodes + 4 * round;
        const Vec2 c = y0; // full disk around the kernel singularity
        double total = 0.0;
        for (int k = 0; k < n_ang; ++k) {
            const double th = kTwoPi * k / n_ang;
            const Vec2 e{std::cos(th), std::sin(th)};
            total += quadrature::graded_with_breakpoints(
                [&](double t) { return -std::log(t) / kTwoPi * rho.f(c + e * t) * t; }, 0.0, R,
                breaks, n_rad);
        }
        return total * (kTwoPi / n_ang);
    };
    return refine_to_tol(pass, q.abs_tol, "log_potential");
}

} // namespace liouville::green
