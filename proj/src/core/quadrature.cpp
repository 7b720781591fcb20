#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace liouville::quadrature {

namespace {

std::vector<std::pair<double, double>> compute_gauss_legendre(int n) {
    // Roots of P_n by Newton iteration from the Chebyshev-like initial guess;
    // weights w = 2 / ((1-x^2) P_n'(x)^2).
    std::vector<std::pair<double, double>> rule(n);
    for (int k = 0; k < (n + 1) / 2; ++k) {
        double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[k] = {x, w};
        rule[n - 1 - k] = {-x, w};
    }
    return rule;
}

std::map<int, std::vector<std::pair<double, double>>> g_gl_cache;
std::mutex g_gl_mutex;

} // namespace

const std::vector<std::pair<double, double>>& gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: order must be positive");
    std::lock_guard<std::mutex> lock(g_gl_mutex);
    auto it = g_gl_cache.find(n);
    if (it == g_gl_cache.end()) it = g_gl_cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

double composite_gauss(const std::function<double(double)>& f, double a, double b, int order,
                       int panels) {
    const auto& rule = gauss_legendre(order);
    double total = 0.0;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h, half = 0.5 * h;
        double acc = 0.0;
        for (const auto& [x, w] : rule) acc += w * f(mid + half * x);
        total += half * acc;
    }
    return total;
}

double graded_toward_a(const std::function<double(double)>& f, double a, double b, int order) {
    if (!(b > a)) return 0.0;
    const double len = b - a;
    double total = 0.0;
    // innermost segment [a, a + len*ratio^levels], then geometric growth
    double hi = a + len * std::pow(kGradedRatio, kGradedLevels);
    total += composite_gauss(f, a, hi, order);
    for (int k = kGradedLevels; k >= 1; --k) {
        const double next = a + len * std::pow(kGradedRatio, k - 1);
        total += composite_gauss(f, hi, next, order);
        hi = next;
    }
    return total;
}

double graded_with_breakpoints(const std::function<double(double)>& f, double a, double b,
                               const std::vector<double>& breaks, int order) {
    std::vector<double> pts{a};
    for (double p : breaks)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double total = 0.0;
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
        // grade toward both ends of the piece by splitting at its midpoint
        const double lo = pts[k], hi = pts[k + 1], mid = 0.5 * (lo + hi);
        total += graded_toward_a(f, lo, mid, order);
        total += graded_toward_a([&f, lo, hi](double t) { return f(lo + hi - t); }, lo, mid, order);
    }
    return total;
}

double adaptive(const std::function<double(double)>& f, double a, double b,
                const std::vector<double>& breaks) {
    std::vector<double> pts{a};
    for (double p : breaks)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());

    double total = 0.0;
    for (size_t k = 0; k + 1 < pts.size(); ++k) {
        double err = 0.0;
        const double piece = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, pts[k], pts[k + 1], 15, 1e-9, &err);
        if (err > 1e-10 + 1e-9 * std::fabs(piece))
            throw ToleranceError("adaptive quadrature did not reach tolerance", total + piece, err);
        total += piece;
    }
    return total;
}

double periodic_trapezoid(const std::function<double(double)>& g, int n) {
    if (n < 1) throw DomainError("periodic_trapezoid: need at least one node");
    const double h = 2.0 * M_PI / n;
    double acc = 0.0;
    for (int k = 0; k < n; ++k) acc += g(k * h);
    return acc * h;
}

} // namespace liouville::quadrature
