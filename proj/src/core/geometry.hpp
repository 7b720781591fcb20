#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "core/errors.hpp"

namespace liouville {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
};

// Uniform radial mesh on [r_min, r_max]; r_min is 0 except for annuli.
struct RadialGrid {
    double r_min = 0.0;
    double r_max = 1.0;
    int n = 4097; // node count, >= 64

    RadialGrid() = default;
    RadialGrid(double rmin, double rmax, int nodes) : r_min(rmin), r_max(rmax), n(nodes) {
        if (!(rmin >= 0.0) || !(rmax > rmin))
            throw DomainError("radial grid: need 0 <= r_min < r_max");
        if (nodes < 64) throw DomainError("radial grid: need at least 64 nodes");
    }
    double spacing() const { return (r_max - r_min) / (n - 1); }
    double node(int j) const { return r_min + spacing() * j; }
};

// Tensor grid of nx*ny nodes on [x0,x1]x[y0,y1] (nodes include the borders).
struct RectGrid {
    double x0 = -1.0, x1 = 1.0;
    double y0 = -1.0, y1 = 1.0;
    int nx = 129, ny = 129;

    RectGrid() = default;
    RectGrid(double ax, double bx, double ay, double by, int mx, int my)
        : x0(ax), x1(bx), y0(ay), y1(by), nx(mx), ny(my) {
        if (!(bx > ax) || !(by > ay)) throw DomainError("rect grid: empty extent");
        if (mx < 3 || my < 3) throw DomainError("rect grid: need at least 3 nodes per axis");
    }
    double hx() const { return (x1 - x0) / (nx - 1); }
    double hy() const { return (y1 - y0) / (ny - 1); }
    double xnode(int i) const { return x0 + hx() * i; }
    double ynode(int j) const { return y0 + hy() * j; }
};

// Compact subsets the functionals accept: closed balls, closed centered
// annuli, and circles.  Annuli and circles are centered at the origin.
struct CompactRegion {
    enum class Kind { Ball, Annulus, Circle };
    Kind kind = Kind::Ball;
    Vec2 center{};
    double r_in = 0.0;  // Annulus only
    double r_out = 1.0; // Ball radius, Annulus outer radius, Circle radius

    static CompactRegion ball(Vec2 c, double radius) {
        if (!(radius > 0.0)) throw DomainError("region: ball radius must be positive");
        return {Kind::Ball, c, 0.0, radius};
    }
    static CompactRegion annulus(double inner, double outer) {
        if (!(0.0 <= inner && inner < outer)) throw DomainError("region: need 0 <= r_in < r_out");
        return {Kind::Annulus, {0.0, 0.0}, inner, outer};
    }
    static CompactRegion circle(double radius) {
        if (!(radius > 0.0)) throw DomainError("region: circle radius must be positive");
        return {Kind::Circle, {0.0, 0.0}, 0.0, radius};
    }

    bool contains(Vec2 p, double tol = 0.0) const {
        const double d = (p - center).norm();
        switch (kind) {
        case Kind::Ball: return d <= r_out + tol;
        case Kind::Annulus: return d >= r_in - tol && d <= r_out + tol;
        case Kind::Circle: return std::fabs(d - r_out) <= tol;
        }
        return false;
    }

    // Radii covered by the region, as seen from the origin.
    std::pair<double, double> radial_range() const {
        const double c = center.norm();
        switch (kind) {
        case Kind::Ball: return {std::max(0.0, c - r_out), c + r_out};
        case Kind::Annulus: return {r_in, r_out};
        case Kind::Circle: return {r_out, r_out};
        }
        return {0.0, 0.0};
    }
};

} // namespace liouville
