#include <cmath>

#include "core/families.hpp"
#include "core/pde_solver.hpp"
#include "doctest.h"

using namespace liouville;
using families::Family;
using families::RadialProfile;
using families::RadialWeight;
using solver::Branch;
using solver::SolveReport;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kLog2 = 0.693147180559945309417;
constexpr double kLog8 = 2.07944154167983592825;

double max_error_vs_profile(const SolveReport& rep, const RadialProfile& p) {
    const auto& grid = rep.solution.radial();
    double worst = 0.0;
    for (int j = 0; j < grid.n; ++j)
        worst = std::max(worst, std::fabs(rep.solution.at(j) - p.u(grid.node(j))));
    return worst;
}
} // namespace

TEST_CASE("radial ivp reproduces the closed-form bubbles") {
    const RadialGrid grid(0.0, 1.0, 4097);
    SUBCASE("unit bubble") {
        const SolveReport rep = solver::solve_radial_ivp(kLog8, RadialWeight::constant(1.0), grid);
        CHECK(rep.converged);
        CHECK(rep.residual_norm <= 1e-6);
        CHECK(rep.solution.values().back() == doctest::Approx(kLog2).epsilon(1e-9));
        CHECK(max_error_vs_profile(rep, RadialProfile(Family::StandardBubble, 1.0)) < 1e-6);
    }
    SUBCASE("i = 4 bubble pointwise") {
        const double u0 = std::log(8.0 * 16.0);
        const SolveReport rep = solver::solve_radial_ivp(u0, RadialWeight::constant(1.0), grid);
        CHECK(max_error_vs_profile(rep, RadialProfile(Family::StandardBubble, 4.0)) < 1e-6);
    }
    SUBCASE("zero weight keeps u constant") {
        const SolveReport rep = solver::solve_radial_ivp(-1.7, RadialWeight::constant(0.0), grid);
        for (double v : rep.solution.values()) CHECK(v == doctest::Approx(-1.7).epsilon(1e-14));
    }
}

TEST_CASE("radial ivp is fourth order") {
    const RadialProfile p(Family::StandardBubble, 2.0);
    const double u0 = p.u(0.0);
    const double e1 = max_error_vs_profile(
        solver::solve_radial_ivp(u0, RadialWeight::constant(1.0), RadialGrid(0.0, 1.0, 513)), p);
    const double e2 = max_error_vs_profile(
        solver::solve_radial_ivp(u0, RadialWeight::constant(1.0), RadialGrid(0.0, 1.0, 1025)), p);
    CHECK(e1 / e2 >= 7.2);
}

TEST_CASE("blow-up raises and reports the last valid radius") {
    const RadialGrid grid(0.0, 5.0, 4097);
    CHECK_THROWS_AS(solver::solve_radial_ivp(800.0, RadialWeight::constant(1.0), grid),
                    BlowupError);
    // a sign-flipped weight drives u upward through the guard at finite r
    const RadialWeight w{[](double) { return -2.0; }, {}, 2.0};
    try {
        solver::solve_radial_ivp(5.0, w, grid);
        FAIL("expected blow-up");
    } catch (const BlowupError& e) {
        CHECK(e.last_valid_radius > 0.0);
        CHECK(e.last_valid_radius < 5.0);
    }
}

TEST_CASE("radial bvp finds both branches") {
    const RadialGrid grid(0.0, 1.0, 4097);
    const RadialProfile p(Family::StandardBubble, 4.0);
    const double g = p.u(1.0);
    const SolveReport low = solver::solve_radial_bvp(g, RadialWeight::constant(1.0), Branch::Low, grid);
    const SolveReport high = solver::solve_radial_bvp(g, RadialWeight::constant(1.0), Branch::High, grid);
    // u_i(1) = u_{1/i}(1): the two center values are log(8 i^2) and log(8/i^2)
    CHECK(low.u0 == doctest::Approx(std::log(8.0 / 16.0)).epsilon(1e-7));
    CHECK(high.u0 == doctest::Approx(std::log(8.0 * 16.0)).epsilon(1e-7));
    CHECK(low.u0 <= high.u0);
    CHECK(low.converged);
    CHECK(high.converged);
    CHECK(low.solution.values().back() == doctest::Approx(g).epsilon(1e-8));
}

TEST_CASE("radial bvp tangent contact at the shooting maximum") {
    // the shooting map for V = 1 peaks exactly at zero when g = log 2
    const RadialGrid grid(0.0, 1.0, 4097);
    const SolveReport rep =
        solver::solve_radial_bvp(kLog2, RadialWeight::constant(1.0), Branch::Low, grid);
    CHECK(rep.u0 == doctest::Approx(kLog8).epsilon(1e-6));
}

TEST_CASE("radial bvp with zero weight is the identity map") {
    const RadialGrid grid(0.0, 1.0, 257);
    const SolveReport rep =
        solver::solve_radial_bvp(-2.3, RadialWeight::constant(0.0), Branch::High, grid);
    CHECK(rep.u0 == doctest::Approx(-2.3).epsilon(1e-9));
    for (double v : rep.solution.values()) CHECK(v == doctest::Approx(-2.3).epsilon(1e-9));
}

TEST_CASE("radial bvp refuses unreachable boundary values") {
    const RadialGrid grid(0.0, 1.0, 1025);
    CHECK_THROWS_AS(
        solver::solve_radial_bvp(kLog2 + 0.1, RadialWeight::constant(1.0), Branch::Low, grid),
        NoSolutionError);
    CHECK_THROWS_AS(
        solver::solve_radial_bvp(1000.0, RadialWeight::constant(1.0), Branch::High, grid),
        NoSolutionError);
}

TEST_CASE("fd2d reproduces linear functions exactly") {
    const RectGrid grid(0.0, 1.0, 0.0, 1.0, 33, 33);
    const SolveReport rep = solver::solve_fd2d(
        grid, [](Vec2) { return 0.0; }, [](Vec2 p) { return p.x; });
    CHECK(rep.converged);
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j)
            CHECK(rep.solution.at(i, j) == doctest::Approx(grid.xnode(i)).epsilon(1e-11).scale(1.0));
}

TEST_CASE("fd2d obeys the discrete maximum principle for zero weight") {
    const RectGrid grid(-1.0, 1.0, -1.0, 1.0, 49, 49);
    const auto g = [](Vec2 p) { return std::sin(3.0 * p.x) + 0.5 * std::cos(2.0 * p.y); };
    const SolveReport rep = solver::solve_fd2d(grid, [](Vec2) { return 0.0; }, g);
    double glo = 1e300, ghi = -1e300;
    for (int i = 0; i < grid.nx; ++i) {
        for (int j = 0; j < grid.ny; ++j) {
            if (i == 0 || j == 0 || i == grid.nx - 1 || j == grid.ny - 1) {
                glo = std::min(glo, rep.solution.at(i, j));
                ghi = std::max(ghi, rep.solution.at(i, j));
            }
        }
    }
    for (int i = 1; i + 1 < grid.nx; ++i)
        for (int j = 1; j + 1 < grid.ny; ++j) {
            CHECK(rep.solution.at(i, j) >= glo - 1e-12);
            CHECK(rep.solution.at(i, j) <= ghi + 1e-12);
        }
}

TEST_CASE("fd2d second order on the manufactured solution") {
    const auto exact = [](Vec2 p) { return std::sin(kPi * p.x) * std::sin(kPi * p.y); };
    const auto V = [&](Vec2 p) {
        const double u = exact(p);
        return 2.0 * kPi * kPi * u * std::exp(-u);
    };
    const auto zero = [](Vec2) { return 0.0; };
    const auto err = [&](int n) {
        const RectGrid grid(0.0, 1.0, 0.0, 1.0, n, n);
        const SolveReport rep = solver::solve_fd2d(grid, V, zero);
        REQUIRE(rep.converged);
        double worst = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                worst = std::max(worst,
                                 std::fabs(rep.solution.at(i, j) -
                                           exact({grid.xnode(i), grid.ynode(j)})));
        return worst;
    };
    const double ratio = err(33) / err(65);
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("fd2d matches a closed-form bubble on an interior square") {
    const RadialProfile p(Family::StandardBubble, 2.0);
    const RectGrid grid(-0.5, 0.5, -0.5, 0.5, 129, 129);
    solver::Fd2dOptions opt;
    opt.init = fields::SampledField::sample_rect(grid, [&](Vec2 q) { return p.u(q.norm()); });
    const SolveReport rep = solver::solve_fd2d(
        grid, [](Vec2) { return 1.0; }, [&](Vec2 q) { return p.u(q.norm()); }, opt);
    CHECK(rep.converged);
    double worst = 0.0;
    for (int i = 0; i < grid.nx; ++i)
        for (int j = 0; j < grid.ny; ++j)
            worst = std::max(worst, std::fabs(rep.solution.at(i, j) -
                                              p.u(Vec2{grid.xnode(i), grid.ynode(j)}.norm())));
    CHECK(worst <= 5e-3);
}

TEST_CASE("coercive green reduces to the laplace kernel at zero eps") {
    const RadialGrid grid(0.0, 1.0, 4097);
    const auto zero = [](double) { return 0.0; };
    CHECK(solver::green_coercive_radial(zero, 0.5, grid) ==
          doctest::Approx(0.110317800076325796698).epsilon(1e-12));
    for (double r : {0.125, 0.3, 0.9}) {
        CHECK(solver::green_coercive_radial(zero, r, grid) ==
              doctest::Approx(std::log(1.0 / r) / kTwoPi).epsilon(1e-9));
    }
}

TEST_CASE("coercive green decreases under larger eps") {
    const RadialGrid grid(0.0, 1.0, 4097);
    double prev = 1e300;
    for (double c : {0.0, 1.0, 10.0, 100.0}) {
        const double g = solver::green_coercive_radial([c](double) { return c; }, 0.5, grid);
        CHECK(g > 0.0);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("coercive green validates its inputs") {
    const RadialGrid grid(0.0, 1.0, 1025);
    const auto zero = [](double) { return 0.0; };
    CHECK_THROWS_AS(solver::green_coercive_radial(zero, 0.0, grid), DomainError);
    CHECK_THROWS_AS(solver::green_coercive_radial(zero, 1.0, grid), DomainError);
    CHECK_THROWS_AS(solver::green_coercive_radial([](double) { return -1.0; }, 0.5, grid),
                    DomainError);
}

TEST_CASE("coercive green is grid converged") {
    const auto eps = [](double r) { return 1.0 + r * r; };
    const double a = solver::green_coercive_radial(eps, 0.37, RadialGrid(0.0, 1.0, 4097));
    const double b = solver::green_coercive_radial(eps, 0.37, RadialGrid(0.0, 1.0, 8193));
    CHECK(a == doctest::Approx(b).epsilon(1e-7));
}
