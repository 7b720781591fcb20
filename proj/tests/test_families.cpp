#include <cmath>
#include <random>

#include "core/families.hpp"
#include "doctest.h"

using namespace liouville;
using families::Family;
using families::RadialProfile;

namespace {
constexpr double kPi = 3.14159265358979323846;
// log 8 and 8*pi, frozen to more digits than double carries
constexpr double kLog8 = 2.07944154167983592825;
constexpr double kEightPi = 25.1327412287183459077;
} // namespace

TEST_CASE("descriptor round trip for every family") {
    const RadialProfile originals[] = {
        RadialProfile(Family::StandardBubble, 7.0),
        RadialProfile(Family::RemarkBubble, 3.5),
        RadialProfile(Family::RemarkBubble, 3.5, 1.0, true),
        RadialProfile(Family::ShafrirPiecewise, 1.0, 1.5),
        RadialProfile(Family::ShafrirScaled, 16.0, 2.0),
        RadialProfile(Family::AnnulusFamily, 12.0),
    };
    for (const RadialProfile& p : originals) {
        const RadialProfile q = RadialProfile::parse(p.descriptor());
        CHECK(q.family() == p.family());
        CHECK(q.index() == doctest::Approx(p.index()).epsilon(1e-15));
        CHECK(q.beta() == doctest::Approx(p.beta()).epsilon(1e-15));
        CHECK(q.remark_literal() == p.remark_literal());
    }
}

TEST_CASE("descriptor parse failures") {
    CHECK_THROWS_AS(RadialProfile::parse("paraboloid:3"), InputError);
    CHECK_THROWS_AS(RadialProfile::parse("bubble:abc"), InputError);
    CHECK_THROWS_AS(RadialProfile::parse("bubble"), InputError);
    CHECK_THROWS_AS(RadialProfile::parse("shafrir-scaled:4"), InputError);
    CHECK_THROWS_AS(RadialProfile::parse(""), InputError);
}

TEST_CASE("bubble closed forms") {
    const RadialProfile p(Family::StandardBubble, 16.0);
    CHECK(p.u(0.0) == doctest::Approx(std::log(8.0 * 256.0)).epsilon(1e-15));
    // gradient spike |u'(1/i)| = 2i
    CHECK(std::fabs(p.du(1.0 / 16.0)) == doctest::Approx(32.0).epsilon(1e-13));
    // mass over B_1 equals 8 pi i^2/(1+i^2); i=16 value frozen from an
    // independent high-precision evaluation
    CHECK(p.mass(1.0) == doctest::Approx(25.0349484612914262738).epsilon(1e-14));
    CHECK(p.mass_quadrature(1.0) == doctest::Approx(p.mass(1.0)).epsilon(1e-10));
    // i=2 ball of radius 1/2 carries exactly half the total mass
    const RadialProfile p2(Family::StandardBubble, 2.0);
    CHECK(p2.mass(0.5) == doctest::Approx(4.0 * kPi).epsilon(1e-14));
    CHECK(p2.u(0.0) == doctest::Approx(kLog8 + std::log(4.0)).epsilon(1e-15));
}

TEST_CASE("bubble mass approaches the quantization level") {
    const RadialProfile p(Family::StandardBubble, 256.0);
    CHECK(std::fabs(p.mass(1.0) - kEightPi) < 1e-3);
}

TEST_CASE("remark family collapses uniformly while its mass vanishes") {
    const RadialProfile p(Family::RemarkBubble, 4.0);
    CHECK(p.mass(1.0) == doctest::Approx(1.47839654286578505339).epsilon(1e-14)); // 8 pi/17
    // values drop like -2 log(mu^2) as mu grows, at every fixed radius
    const RadialProfile q(Family::RemarkBubble, 8.0);
    CHECK(q.u(0.5) < p.u(0.5));
    CHECK(q.u(0.0) < p.u(0.0));
    // literal variant shifts u by -log(8 mu^2) and moves the factor into V
    const RadialProfile lit(Family::RemarkBubble, 4.0, 1.0, true);
    CHECK(lit.u(0.3) == doctest::Approx(p.u(0.3) - std::log(8.0 * 16.0)).epsilon(1e-12));
    CHECK(lit.weight(0.3) == doctest::Approx(128.0).epsilon(1e-15));
    CHECK(p.weight(0.3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("shafrir piecewise family is C1 across the joint") {
    for (double beta : {1.25, 2.0, 3.0}) {
        const RadialProfile p(Family::ShafrirPiecewise, 1.0, beta);
        REQUIRE(p.joints().size() == 1);
        const double j = p.joints()[0];
        CHECK(j == doctest::Approx(1.0));
        const double d = 1e-7;
        CHECK(p.u(j - d) == doctest::Approx(p.u(j + d)).epsilon(1e-6));
        CHECK(p.du(j - d) == doctest::Approx(p.du(j + d)).epsilon(1e-5));
        // V jumps from 2/beta^2 to 2; the joint itself evaluates inner
        CHECK(p.weight(j) == doctest::Approx(2.0 / (beta * beta)).epsilon(1e-15));
        CHECK(p.weight(j + d) == doctest::Approx(2.0).epsilon(1e-15));
    }
}

TEST_CASE("scaled shafrir members are the rescaled base profile") {
    const double beta = 1.5;
    const RadialProfile base(Family::ShafrirPiecewise, 1.0, beta);
    for (double i : {4.0, 32.0, 256.0}) {
        const RadialProfile scaled(Family::ShafrirScaled, i, beta);
        // fixed domain: the inner bubble shrinks inside [0,1] as i grows
        CHECK(scaled.r_max() == doctest::Approx(1.0));
        REQUIRE(scaled.joints().size() == 1);
        CHECK(scaled.joints()[0] == doctest::Approx(1.0 / i));
        for (double r : {0.1 / i, 0.9 / i, 2.0 / i, 3.5 / i}) {
            CHECK(scaled.u(r) ==
                  doctest::Approx(base.u(i * r) + 2.0 * std::log(i)).epsilon(1e-12));
        }
    }
}

TEST_CASE("annulus family lives on [1,2] and grows linearly in mass") {
    const RadialProfile p(Family::AnnulusFamily, 8.0);
    CHECK(p.r_min() == doctest::Approx(1.0));
    CHECK(p.r_max() == doctest::Approx(2.0));
    CHECK_THROWS_AS(p.u(0.5), DomainError);
    CHECK_THROWS_AS(p.u(2.5), DomainError);
    // closed form 4 pi i (1/2 - 1/(1+2^{2i}))
    const double expected = 4.0 * kPi * 8.0 * (0.5 - 1.0 / (1.0 + std::pow(2.0, 16.0)));
    CHECK(p.mass(2.0) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(p.mass_quadrature(2.0) == doctest::Approx(p.mass(2.0)).epsilon(1e-9));
    CHECK(p.mass(2.0) / (2.0 * kPi * 8.0) == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("profiles are strictly decreasing in r") {
    const RadialProfile ps[] = {
        RadialProfile(Family::StandardBubble, 5.0),
        RadialProfile(Family::RemarkBubble, 2.5),
        RadialProfile(Family::ShafrirPiecewise, 1.0, 1.75),
        RadialProfile(Family::ShafrirScaled, 9.0, 1.25),
        RadialProfile(Family::AnnulusFamily, 6.0),
    };
    for (const RadialProfile& p : ps) {
        double prev = p.u(p.r_min());
        const int steps = 200;
        for (int k = 1; k <= steps; ++k) {
            const double r = p.r_min() + (p.r_max() - p.r_min()) * k / steps;
            const double cur = p.u(r);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("analytic residual vanishes at random admissible points") {
    std::mt19937 rng(515);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto log_uniform = [&](double a, double b) {
        return a * std::exp(unit(rng) * std::log(b / a));
    };
    for (int trial = 0; trial < 50; ++trial) {
        const RadialProfile ps[] = {
            RadialProfile(Family::StandardBubble, log_uniform(1.0, 256.0)),
            RadialProfile(Family::RemarkBubble, log_uniform(0.25, 256.0)),
            RadialProfile(Family::ShafrirPiecewise, 1.0, 1.0 + 3.0 * unit(rng)),
            RadialProfile(Family::ShafrirScaled, log_uniform(1.0, 256.0), 1.0 + 3.0 * unit(rng)),
            RadialProfile(Family::AnnulusFamily, log_uniform(1.0, 64.0)),
        };
        for (const RadialProfile& p : ps) {
            double r = p.r_min() + (p.r_max() - p.r_min()) * unit(rng);
            for (double j : p.joints())
                if (std::fabs(r - j) < 1e-6) r = j + 1e-6;
            CHECK(std::fabs(p.residual(r)) <= 1e-8);
        }
    }
}

TEST_CASE("residual refuses to straddle a joint") {
    const RadialProfile p(Family::ShafrirPiecewise, 1.0, 2.0);
    CHECK_THROWS_AS(p.residual(1.0 + 1e-10), DomainError);
    CHECK(std::fabs(p.residual(1.0 + 1e-6)) <= 1e-8);
}

TEST_CASE("second derivative matches differentiated first derivative") {
    const RadialProfile p(Family::StandardBubble, 3.0);
    const double r = 0.7, h = 1e-5;
    const double fd = (p.du(r + h) - p.du(r - h)) / (2.0 * h);
    CHECK(p.d2u(r) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("weight bounds dominate the weight") {
    const RadialProfile ps[] = {
        RadialProfile(Family::StandardBubble, 4.0),
        RadialProfile(Family::RemarkBubble, 4.0, 1.0, true),
        RadialProfile(Family::ShafrirPiecewise, 1.0, 1.5),
        RadialProfile(Family::AnnulusFamily, 3.0),
    };
    for (const RadialProfile& p : ps) {
        for (int k = 0; k <= 50; ++k) {
            const double r = p.r_min() + (p.r_max() - p.r_min()) * k / 50.0;
            CHECK(p.weight(r) <= p.weight_bound() + 1e-12);
        }
    }
}

TEST_CASE("constant weights reject negative values") {
    CHECK_THROWS_AS(families::RadialWeight::constant(-1.0), DomainError);
    const families::RadialWeight w = families::RadialWeight::constant(2.5);
    CHECK(w.eval(0.3) == 2.5);
    CHECK(w.bound == 2.5);
    CHECK(w.breakpoints.empty());
}
