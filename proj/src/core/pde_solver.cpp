#include "core/pde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Sparse>

namespace liouville::solver {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

struct State {
    double u;
    double w; // u'
};

// RK4 step for u' = w, w' = -w/r - V e^u from r (r > 0) with width h.
State rk4_step(State s, double r, double h, const std::function<double(double)>& V) {
    const auto rhs = [&V](double rr, State q) -> State {
        return {q.w, -q.w / rr - V(rr) * std::exp(std::min(q.u, kOverflowGuard))};
    };
    const State k1 = rhs(r, s);
    const State k2 = rhs(r + h / 2, {s.u + h / 2 * k1.u, s.w + h / 2 * k1.w});
    const State k3 = rhs(r + h / 2, {s.u + h / 2 * k2.u, s.w + h / 2 * k2.w});
    const State k4 = rhs(r + h, {s.u + h * k3.u, s.w + h * k3.w});
    return {s.u + h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
            s.w + h / 6 * (k1.w + 2 * k2.w + 2 * k3.w + k4.w)};
}

// Series start over [0, h]: u = u0 + a r^2 + b r^4 with a = -V(0)e^{u0}/4 and
// b from the next order (V's r^2 coefficient estimated by one sample).
State series_start(double u0, double h, const std::function<double(double)>& V) {
    const double v0 = V(0.0);
    const double eu = std::exp(std::min(u0, kOverflowGuard));
    const double a = -v0 * eu / 4.0;
    const double d = h / 2.0;
    double v2 = (V(d) - v0) / (d * d);
    if (!std::isfinite(v2)) v2 = 0.0;
    const double b = -eu * (v0 * a + v2) / 16.0;
    return {u0 + a * h * h + b * h * h * h * h, 2.0 * a * h + 4.0 * b * h * h * h};
}

} // namespace

SolveReport solve_radial_ivp(double u0, const families::RadialWeight& V, const RadialGrid& grid) {
    if (grid.r_min != 0.0) throw DomainError("radial ivp: grid must start at r = 0");
    if (u0 > kOverflowGuard)
        throw BlowupError("radial ivp: initial value already beyond the overflow guard", 0.0);
    const int n = grid.n;
    const double h = grid.spacing();
    std::vector<double> u(n);
    u[0] = u0;

    double defect = 0.0;
    State s = series_start(u0, h, V.eval);
    u[1] = s.u;
    for (int j = 1; j + 1 < n; ++j) {
        const double r = grid.node(j);
        const State full = rk4_step(s, r, h, V.eval);
        State half = rk4_step(s, r, h / 2, V.eval);
        half = rk4_step(half, r + h / 2, h / 2, V.eval);
        defect = std::max(defect,
                          std::max(std::fabs(full.u - half.u), std::fabs(full.w - half.w)) / h);
        s = half;
        if (s.u > kOverflowGuard)
            throw BlowupError("radial ivp: solution exceeded the overflow guard", r + h);
        u[j + 1] = s.u;
    }

    SolveReport rep{fields::SampledField::on_radial(grid, std::move(u)), true, n - 1, defect, u0};
    rep.converged = defect <= 1e-6;
    return rep;
}

namespace {

// Shooting map F(u0) = u(r_max; u0) - g; blow-up counts as +infinity.
double shoot(double u0, double g, const families::RadialWeight& V, const RadialGrid& grid) {
    try {
        const SolveReport rep = solve_radial_ivp(u0, V, grid);
        return rep.solution.values().back() - g;
    } catch (const BlowupError&) {
        return std::numeric_limits<double>::infinity();
    }
}

} // namespace

SolveReport solve_radial_bvp(double g, const families::RadialWeight& V, Branch branch,
                             const RadialGrid& grid) {
    const double lo = g - 60.0, hi = g + 120.0;
    const auto F = [&](double u0) { return shoot(u0, g, V, grid); };

    // Coarse scan; near-tangent root pairs around the map's maximum get a
    // finer second scan.
    std::vector<std::pair<double, double>> samples;
    for (double u0 = lo; u0 <= hi + 1e-12; u0 += 1.0) samples.emplace_back(u0, F(u0));
    double arg_max = lo;
    double f_max = -std::numeric_limits<double>::infinity();
    for (const auto& [a, fa] : samples)
        if (std::isfinite(fa) && fa > f_max) f_max = fa, arg_max = a;
    std::vector<std::pair<double, double>> fine;
    for (double u0 = std::max(lo, arg_max - 1.5); u0 <= std::min(hi, arg_max + 1.5); u0 += 0.05)
        fine.emplace_back(u0, F(u0));
    samples.insert(samples.end(), fine.begin(), fine.end());
    std::sort(samples.begin(), samples.end());
    for (const auto& [a, fa] : fine)
        if (std::isfinite(fa) && fa > f_max) f_max = fa, arg_max = a;

    const auto bisect = [&F](double a, double fa, double b, double fb) {
        for (int it = 0; it < 80 && b - a > 1e-9; ++it) { // resolve u0 below 1e-8
            const double m = 0.5 * (a + b);
            const double fm = F(m);
            if ((fm <= 0.0) == (fa <= 0.0)) a = m, fa = fm;
            else b = m, fb = fm;
        }
        return 0.5 * (a + b);
    };

    std::vector<double> roots;
    for (size_t k = 0; k + 1 < samples.size(); ++k) {
        const auto [a, fa] = samples[k];
        const auto [b, fb] = samples[k + 1];
        if ((fa > 0.0) == (fb > 0.0)) continue;
        if (!std::isfinite(fa) || !std::isfinite(fb)) continue;
        const double root = bisect(a, fa, b, fb);
        if (roots.empty() || std::fabs(roots.back() - root) > 1e-7) roots.push_back(root);
    }

    if (roots.empty()) {
        // No sign change: either the positive hump fell between scan samples
        // or the map only touches zero.  Locate the maximum by golden section
        // around the best finite sample and decide there.
        if (!std::isfinite(f_max))
            throw NoSolutionError("radial bvp: every shooting start in [g - 60, g + 120] blows up");
        double a = std::max(lo, arg_max - 0.06), b = std::min(hi, arg_max + 0.06);
        constexpr double kInvPhi = 0.6180339887498949;
        double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
        double f1 = F(x1), f2 = F(x2);
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                a = x1, x1 = x2, f1 = f2;
                x2 = a + kInvPhi * (b - a), f2 = F(x2);
            } else {
                b = x2, x2 = x1, f2 = f1;
                x1 = b - kInvPhi * (b - a), f1 = F(x1);
            }
        }
        // One parabolic fit pins the vertex well below the integration noise
        // that limits the golden comparisons near the top.
        double m = 0.5 * (a + b);
        const double delta = 1e-3;
        const double fl = F(m - delta), fc = F(m), fr = F(m + delta);
        const double den = fl - 2.0 * fc + fr;
        if (std::isfinite(den) && den < 0.0) {
            const double shift = 0.5 * delta * (fl - fr) / den;
            if (std::fabs(shift) <= delta) m += shift;
        }
        const double fm = F(m);
        if (fm > 0.0) {
            const double l = std::max(lo, m - 0.1), r = std::min(hi, m + 0.1);
            const double fll = F(l), frr = F(r);
            if (std::isfinite(fll) && fll < 0.0) roots.push_back(bisect(l, fll, m, fm));
            if (std::isfinite(frr) && frr < 0.0) {
                const double second = bisect(m, fm, r, frr);
                if (roots.empty() || std::fabs(second - roots.back()) > 1e-7)
                    roots.push_back(second);
            }
            if (roots.empty()) roots.push_back(m); // hump without negative flanks
        } else if (fm >= -1e-5) {
            roots.push_back(m); // tangent contact: both branches coincide
        } else {
            throw NoSolutionError("radial bvp: no shooting bracket in [g - 60, g + 120]");
        }
    }

    const double u0 = branch == Branch::Low ? roots.front() : roots.back();
    SolveReport rep = solve_radial_ivp(u0, V, grid);
    rep.u0 = u0;
    rep.converged = rep.converged && std::fabs(rep.solution.values().back() - g) <= 1e-6;
    return rep;
}

SolveReport solve_fd2d(const RectGrid& grid, const std::function<double(Vec2)>& V,
                       const std::function<double(Vec2)>& g, const Fd2dOptions& opt) {
    const int nx = grid.nx, ny = grid.ny;
    const int mx = nx - 2, my = ny - 2; // interior nodes
    const double ax = 1.0 / (grid.hx() * grid.hx());
    const double ay = 1.0 / (grid.hy() * grid.hy());
    const auto idx = [my](int i, int j) { return i * my + j; }; // interior (i,j) from 0

    std::vector<double> vals(static_cast<size_t>(nx) * ny, 0.0);
    const auto at = [&vals, ny](int ix, int iy) -> double& {
        return vals[static_cast<size_t>(ix) * ny + iy];
    };
    for (int ix = 0; ix < nx; ++ix) {
        at(ix, 0) = g({grid.xnode(ix), grid.ynode(0)});
        at(ix, ny - 1) = g({grid.xnode(ix), grid.ynode(ny - 1)});
    }
    for (int iy = 0; iy < ny; ++iy) {
        at(0, iy) = g({grid.xnode(0), grid.ynode(iy)});
        at(nx - 1, iy) = g({grid.xnode(nx - 1), grid.ynode(iy)});
    }

    std::vector<double> vfield(static_cast<size_t>(mx) * my);
    for (int i = 0; i < mx; ++i)
        for (int j = 0; j < my; ++j)
            vfield[idx(i, j)] = V({grid.xnode(i + 1), grid.ynode(j + 1)});

    using Sp = Eigen::SparseMatrix<double>;
    using Trip = Eigen::Triplet<double>;
    const int N = mx * my;

    const auto assemble = [&](const std::vector<double>& diag_shift) {
        std::vector<Trip> trips;
        trips.reserve(static_cast<size_t>(N) * 5);
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j) {
                const int row = idx(i, j);
                trips.emplace_back(row, row, 2.0 * ax + 2.0 * ay - diag_shift[row]);
                if (i > 0) trips.emplace_back(row, idx(i - 1, j), -ax);
                if (i < mx - 1) trips.emplace_back(row, idx(i + 1, j), -ax);
                if (j > 0) trips.emplace_back(row, idx(i, j - 1), -ay);
                if (j < my - 1) trips.emplace_back(row, idx(i, j + 1), -ay);
            }
        Sp A(N, N);
        A.setFromTriplets(trips.begin(), trips.end());
        return A;
    };

    // -lap_h(u) at the interior node (i,j), boundary values folded in.
    const auto neg_lap = [&](int i, int j) {
        return (2.0 * at(i + 1, j + 1) - at(i, j + 1) - at(i + 2, j + 1)) * ax +
               (2.0 * at(i + 1, j + 1) - at(i + 1, j) - at(i + 1, j + 2)) * ay;
    };
    const auto residual_vec = [&](Eigen::VectorXd& R) {
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j) {
                const int row = idx(i, j);
                R(row) = neg_lap(i, j) -
                         vfield[row] * std::exp(std::min(at(i + 1, j + 1), kOverflowGuard));
            }
    };

    // initial iterate
    if (opt.init) {
        const auto& f = *opt.init;
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j)
                at(i + 1, j + 1) = f.eval({grid.xnode(i + 1), grid.ynode(j + 1)});
    } else {
        // harmonic extension of g
        Eigen::VectorXd rhs(N);
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j) {
                double b = 0.0;
                if (i == 0) b += ax * at(0, j + 1);
                if (i == mx - 1) b += ax * at(nx - 1, j + 1);
                if (j == 0) b += ay * at(i + 1, 0);
                if (j == my - 1) b += ay * at(i + 1, ny - 1);
                rhs(idx(i, j)) = b;
            }
        Eigen::SparseLU<Sp> lu;
        Sp A = assemble(std::vector<double>(N, 0.0));
        lu.compute(A);
        if (lu.info() != Eigen::Success) throw Error("fd2d: factorization of the Laplacian failed");
        Eigen::VectorXd u0 = lu.solve(rhs);
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j) at(i + 1, j + 1) = u0(idx(i, j));
    }

    Eigen::VectorXd R(N), Rtrial(N);
    residual_vec(R);
    double rnorm = R.lpNorm<Eigen::Infinity>();
    int iter = 0;
    bool ok = rnorm <= opt.tol;
    std::vector<double> shift(N);
    std::vector<double> backup(static_cast<size_t>(nx) * ny);

    while (!ok && iter < opt.max_newton) {
        ++iter;
        for (int i = 0; i < mx; ++i)
            for (int j = 0; j < my; ++j) {
                const int row = idx(i, j);
                shift[row] =
                    vfield[row] * std::exp(std::min(at(i + 1, j + 1), kOverflowGuard));
            }
        Eigen::SparseLU<Sp> lu;
        Sp J = assemble(shift);
        lu.compute(J);
        if (lu.info() != Eigen::Success) break;
        const Eigen::VectorXd delta = lu.solve(-R);

        backup = vals;
        double lambda = 1.0;
        bool accepted = false;
        while (lambda >= 1.0 / 1024.0) {
            vals = backup;
            for (int i = 0; i < mx; ++i)
                for (int j = 0; j < my; ++j) at(i + 1, j + 1) += lambda * delta(idx(i, j));
            residual_vec(Rtrial);
            const double tnorm = Rtrial.lpNorm<Eigen::Infinity>();
            if (tnorm <= (1.0 - 0.25 * lambda) * rnorm || tnorm <= opt.tol) {
                R = Rtrial;
                rnorm = tnorm;
                accepted = true;
                break;
            }
            lambda /= 2.0;
        }
        if (!accepted) {
            vals = backup;
            break;
        }
        ok = rnorm <= opt.tol;
    }

    SolveReport rep{fields::SampledField::on_rect(grid, std::move(vals)), ok, iter, rnorm, 0.0};
    rep.u0 = rep.solution.eval({0.5 * (grid.x0 + grid.x1), 0.5 * (grid.y0 + grid.y1)});
    return rep;
}

double green_coercive_radial(const std::function<double(double)>& eps, double r_eval,
                             const RadialGrid& grid) {
    if (grid.r_min != 0.0) throw DomainError("coercive green: grid must start at r = 0");
    if (!(r_eval > 0.0 && r_eval < grid.r_max))
        throw DomainError("coercive green: r_eval must lie in (0, r_max)");
    const int n = grid.n;
    const double d = grid.spacing();

    std::vector<double> evals(n);
    for (int j = 0; j < n; ++j) {
        evals[j] = eps(grid.node(j));
        if (!(evals[j] >= 0.0)) throw DomainError("coercive green: eps must be nonnegative");
    }

    // unknowns h_0 .. h_{n-2}; h_{n-1} = (1/2pi) log r_max
    const int m = n - 1;
    std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
    const double h_boundary = std::log(grid.r_max) / kTwoPi;
    diag[0] = 4.0 / (d * d) + evals[0];
    sup[0] = -4.0 / (d * d);
    rhs[0] = evals[0] / kTwoPi * (std::log(d / 2.0) - 1.0); // cell average of log r near 0
    for (int j = 1; j < m; ++j) {
        const double r = grid.node(j);
        diag[j] = 2.0 / (d * d) + evals[j];
        sub[j] = -1.0 / (d * d) + 1.0 / (2.0 * d * r);
        sup[j] = -1.0 / (d * d) - 1.0 / (2.0 * d * r);
        rhs[j] = evals[j] / kTwoPi * std::log(r);
    }
    rhs[m - 1] -= sup[m - 1] * h_boundary;

    // Thomas elimination
    std::vector<double> c(m), dd(m);
    c[0] = sup[0] / diag[0];
    dd[0] = rhs[0] / diag[0];
    for (int j = 1; j < m; ++j) {
        const double piv = diag[j] - sub[j] * c[j - 1];
        if (!std::isfinite(piv) || piv == 0.0)
            throw Error("coercive green: singular tridiagonal system");
        c[j] = sup[j] / piv;
        dd[j] = (rhs[j] - sub[j] * dd[j - 1]) / piv;
    }
    std::vector<double> h(n);
    h[n - 1] = h_boundary;
    h[m - 1] = dd[m - 1];
    for (int j = m - 2; j >= 0; --j) h[j] = dd[j] - c[j] * h[j + 1];

    // nodal value if r_eval hits a node, else cubic Lagrange on 4 neighbors
    const double f = (r_eval - grid.r_min) / d;
    const int j0 = static_cast<int>(std::lround(f));
    double h_at;
    if (std::fabs(f - j0) < 1e-9) {
        h_at = h[j0];
    } else {
        int base = std::clamp(static_cast<int>(f) - 1, 0, n - 4);
        h_at = 0.0;
        for (int a = 0; a < 4; ++a) {
            double L = 1.0;
            for (int b = 0; b < 4; ++b)
                if (b != a) L *= (f - (base + b)) / static_cast<double>(a - b);
            h_at += L * h[base + a];
        }
    }
    return -std::log(r_eval) / kTwoPi + h_at;
}

} // namespace liouville::solver
