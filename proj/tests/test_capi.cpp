// Exercises the shared-library interface through its public header only.
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "liouville/liouville.h"

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

TEST_CASE("profile handles: closed forms through the C surface") {
    llab_profile* p = nullptr;
    REQUIRE(llab_profile_create("bubble:16", &p) == LLAB_OK);
    REQUIRE(p != nullptr);

    double u = 0.0, du = 0.0, d2u = 0.0;
    CHECK(llab_profile_eval(p, 0.0, &u, nullptr, nullptr) == LLAB_OK);
    CHECK(u == doctest::Approx(std::log(8.0 * 256.0)).epsilon(1e-14));
    CHECK(llab_profile_eval(p, 1.0 / 16.0, nullptr, &du, &d2u) == LLAB_OK);
    CHECK(du == doctest::Approx(-32.0).epsilon(1e-13));

    double res = 1.0;
    CHECK(llab_profile_residual(p, 0.37, &res) == LLAB_OK);
    CHECK(std::fabs(res) <= 1e-8);

    double mass = 0.0;
    CHECK(llab_profile_mass(p, 1.0, &mass) == LLAB_OK);
    CHECK(mass == doctest::Approx(25.0349484612914262738).epsilon(1e-13));

    llab_profile_free(p);
}

TEST_CASE("profile failures set a readable error") {
    llab_profile* p = nullptr;
    CHECK(llab_profile_create("bubble", &p) == LLAB_INPUT);
    CHECK(std::strlen(llab_last_error()) > 0);
    CHECK(llab_profile_create("frobnicate:3", &p) == LLAB_INPUT);
    CHECK(llab_profile_create(nullptr, &p) == LLAB_INPUT);

    double u = 0.0;
    CHECK(llab_profile_eval(nullptr, 0.5, &u, nullptr, nullptr) == LLAB_INPUT);

    REQUIRE(llab_profile_create("annulus:4", &p) == LLAB_OK);
    CHECK(llab_profile_eval(p, 0.5, &u, nullptr, nullptr) == LLAB_DOMAIN);
    CHECK(std::strlen(llab_last_error()) > 0);
    // a successful call clears the message
    CHECK(llab_profile_eval(p, 1.5, &u, nullptr, nullptr) == LLAB_OK);
    CHECK(std::strlen(llab_last_error()) == 0);
    llab_profile_free(p);
    llab_profile_free(nullptr);
}

TEST_CASE("green kernel: pole value, representation, guard rails") {
    llab_green* g = nullptr;
    CHECK(llab_green_create(0.0, 0.0, -1.0, &g) == LLAB_INPUT);
    REQUIRE(llab_green_create(0.0, 0.0, 1.0, &g) == LLAB_OK);

    double v = 0.0;
    CHECK(llab_green_eval(g, 0.0, 0.0, 0.5, 0.0, &v) == LLAB_OK);
    CHECK(v == doctest::Approx(0.110317800076325796698).epsilon(1e-12));
    CHECK(llab_green_eval(g, 0.5, 0.0, 0.5, 0.0, &v) == LLAB_SINGULARITY);
    CHECK(llab_green_eval(g, 0.0, 0.0, 2.0, 0.0, &v) == LLAB_DOMAIN);

    // -lap(u) = 4, zero trace: u = 1 - |x|^2
    CHECK(llab_green_represent(g, "const:4", "const:0", 0.3, 0.4, &v) == LLAB_OK);
    CHECK(v == doctest::Approx(0.75).epsilon(1e-6));
    // harmonic extension of x1
    CHECK(llab_green_represent(g, "const:0", "x1", 0.3, 0.4, &v) == LLAB_OK);
    CHECK(v == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(llab_green_represent(g, "banana", "const:0", 0.0, 0.0, &v) == LLAB_INPUT);

    llab_green_free(g);
    llab_green_free(nullptr);
}

TEST_CASE("radial solves and field round trips") {
    llab_field* f = nullptr;
    REQUIRE(llab_solve_radial_ivp(std::log(8.0), "const:1", 1.0, 1025, &f) == LLAB_OK);

    double v = 0.0;
    CHECK(llab_field_eval(f, 0.6, 0.8, &v) == LLAB_OK); // radius 1
    CHECK(v == doctest::Approx(std::log(2.0)).epsilon(1e-9));

    const auto path = std::filesystem::temp_directory_path() / "llab-capi-field.txt";
    REQUIRE(llab_field_save(f, path.string().c_str()) == LLAB_OK);
    llab_field* loaded = nullptr;
    REQUIRE(llab_field_load(path.string().c_str(), &loaded) == LLAB_OK);
    double w = 0.0;
    CHECK(llab_field_eval(loaded, 0.25, 0.0, &v) == LLAB_OK);
    CHECK(llab_field_eval(f, 0.25, 0.0, &w) == LLAB_OK);
    CHECK(v == w);
    llab_field_free(loaded);
    llab_field_free(f);
    std::filesystem::remove(path);

    llab_field* missing = nullptr;
    CHECK(llab_field_load("/no/such/field.txt", &missing) == LLAB_IO);

    // center level 800 leaves the representable range before r = 1
    llab_field* blown = nullptr;
    CHECK(llab_solve_radial_ivp(800.0, "const:1", 1.0, 1025, &blown) == LLAB_BLOWUP);
    CHECK(std::strlen(llab_last_error()) > 0);

    const double g4 = std::log(128.0 / 289.0); // boundary value of bubble:4
    double u0 = 0.0;
    CHECK(llab_solve_radial_bvp(g4, "const:1", 1, 1.0, 2049, &u0, nullptr) == LLAB_OK);
    CHECK(u0 == doctest::Approx(std::log(128.0)).epsilon(1e-6));
    llab_field* sol = nullptr;
    CHECK(llab_solve_radial_bvp(g4, "const:1", 0, 1.0, 2049, &u0, &sol) == LLAB_OK);
    CHECK(u0 == doctest::Approx(std::log(0.5)).epsilon(1e-6));
    REQUIRE(sol != nullptr);
    CHECK(llab_field_eval(sol, 1.0, 0.0, &v) == LLAB_OK);
    CHECK(v == doctest::Approx(g4).epsilon(1e-8));
    llab_field_free(sol);

    CHECK(llab_solve_radial_bvp(std::log(2.0) + 0.1, "const:1", 1, 1.0, 1025, &u0, nullptr) ==
          LLAB_NO_SOLUTION);
}

TEST_CASE("coercive green value matches the plain kernel at eps = 0") {
    double v = 0.0;
    REQUIRE(llab_green_coercive("const:0", 0.5, 8193, &v) == LLAB_OK);
    CHECK(v == doctest::Approx(std::log(2.0) / (2.0 * kPi)).epsilon(1e-9));
    CHECK(llab_green_coercive("const:-1", 0.5, 8193, &v) == LLAB_INPUT);
    CHECK(llab_green_coercive("bubble:4", 0.5, 1025, &v) == LLAB_OK);
    CHECK(v < std::log(2.0) / (2.0 * kPi)); // damping only lowers the kernel
    CHECK(v > 0.0);
}

TEST_CASE("two-bubble field over the C surface") {
    llab_field* f = nullptr;
    REQUIRE(llab_build_two_bubble(9.0, 257, &f) == LLAB_OK);
    double v = 0.0;
    CHECK(llab_field_eval(f, 0.0, 0.0, &v) == LLAB_OK);
    CHECK(v == doctest::Approx(9.0 + std::log(9.0)).epsilon(1e-4));
    llab_field_free(f);
    CHECK(llab_build_two_bubble(0.5, 257, &f) == LLAB_INPUT);
    CHECK(llab_build_two_bubble(9.0, 2, &f) == LLAB_DOMAIN);
}

TEST_CASE("scenario listing and a full run through the C surface") {
    char* names = nullptr;
    REQUIRE(llab_scenario_names(&names) == LLAB_OK);
    REQUIRE(names != nullptr);
    CHECK(std::string(names).find("annulus-volume") != std::string::npos);
    CHECK(std::string(names).find('\n') != std::string::npos);
    llab_string_free(names);

    const auto dir = std::filesystem::temp_directory_path() / "llab-capi-run";
    std::filesystem::remove_all(dir);
    const auto cfg = std::filesystem::temp_directory_path() / "llab-capi.conf";
    {
        std::ofstream out(cfg);
        out << "i = 8..12\n";
    }

    int hold = 0;
    char* violations = nullptr;
    REQUIRE(llab_run_scenario("annulus-volume", cfg.string().c_str(), dir.string().c_str(), "csv",
                              &hold, &violations) == LLAB_OK);
    CHECK(hold == 1);
    REQUIRE(violations != nullptr);
    CHECK(std::strlen(violations) == 0);
    llab_string_free(violations);
    CHECK(std::filesystem::exists(dir / "annulus-volume.csv"));
    std::filesystem::remove_all(dir);
    std::filesystem::remove(cfg);

    CHECK(llab_run_scenario("frobnicate", nullptr, nullptr, nullptr, &hold, nullptr) == LLAB_INPUT);
    CHECK(llab_run_scenario("annulus-volume", "/no/such.conf", nullptr, nullptr, &hold, nullptr) ==
          LLAB_IO);
    CHECK(llab_run_scenario("annulus-volume", nullptr, nullptr, "yaml", &hold, nullptr) ==
          LLAB_INPUT);
    CHECK(llab_run_scenario(nullptr, nullptr, nullptr, nullptr, &hold, nullptr) == LLAB_INPUT);

    llab_string_free(nullptr);
}
