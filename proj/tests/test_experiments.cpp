#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>

#include "core/analysis.hpp"
#include "core/experiments.hpp"
#include "doctest.h"

using namespace liouville;
using namespace liouville::experiments;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::filesystem::path temp_dir(const char* tag) {
    const auto dir = std::filesystem::temp_directory_path() / tag;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}
} // namespace

TEST_CASE("index list grammar") {
    CHECK(parse_index_list("1,2,5") == std::vector<double>{1.0, 2.0, 5.0});
    CHECK(parse_index_list("1..5") == std::vector<double>{1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK(parse_index_list("2..16:x2") == std::vector<double>{2.0, 4.0, 8.0, 16.0});
    CHECK(parse_index_list("0..1:0.25") == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(parse_index_list("7") == std::vector<double>{7.0});
    CHECK_THROWS_AS(parse_index_list("5..1"), InputError);
    CHECK_THROWS_AS(parse_index_list("1..8:x0.5"), InputError);
    CHECK_THROWS_AS(parse_index_list("1..4:-1"), InputError);
    CHECK_THROWS_AS(parse_index_list("abc"), InputError);
    CHECK_THROWS_AS(parse_index_list(""), InputError);
}

TEST_CASE("scenario configs: defaults, overrides, validation") {
    for (const std::string& name : scenario_names()) {
        const ScenarioConfig c = ScenarioConfig::defaults(name);
        CHECK(c.scenario == name);
        CHECK_NOTHROW(c.validate());
    }
    CHECK_THROWS_AS(ScenarioConfig::defaults("no-such-scenario"), InputError);

    ScenarioConfig c = ScenarioConfig::defaults("annulus-volume");
    c.apply("i", "1..4");
    CHECK(c.index_list.size() == 4);
    c.apply("format", "text");
    CHECK(c.format == OutputFormat::Text);
    CHECK_THROWS_AS(c.apply("format", "xml"), InputError);
    CHECK_THROWS_AS(c.apply("wavelength", "5"), InputError);
    c.apply("n", "65");
    CHECK_NOTHROW(c.validate());
    c.apply("n", "64");
    CHECK_THROWS_AS(c.validate(), InputError);
    c.apply("n", "1025");
    c.apply("i", "3,2,1");
    CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("scenario config files") {
    const auto dir = temp_dir("llab-config-test");
    const auto path = dir / "run.conf";
    {
        std::ofstream out(path);
        out << "# comment line\n\ni = 2..8:x2\nk = 0.25\nformat = text\n";
    }
    const ScenarioConfig c = ScenarioConfig::from_file("remark-collapse", path.string());
    CHECK(c.index_list == std::vector<double>{2.0, 4.0, 8.0});
    CHECK(c.k == 0.25);
    CHECK(c.format == OutputFormat::Text);

    {
        std::ofstream out(path);
        out << "no equals sign here\n";
    }
    CHECK_THROWS_AS(ScenarioConfig::from_file("remark-collapse", path.string()), InputError);
    CHECK_THROWS_AS(ScenarioConfig::from_file("remark-collapse", (dir / "absent.conf").string()),
                    IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("two-bubble construction") {
    const TwoBubbleSpec spec = TwoBubbleSpec::from_level(9.0);
    CHECK(spec.r_i == doctest::Approx(3.0));
    CHECK(spec.m0 == 9.0);
    CHECK(spec.m1 == 9.0);
    CHECK_THROWS_AS(TwoBubbleSpec::from_level(0.5), InputError);

    // 631 nodes put both peaks (0 and 1/3) exactly on the grid
    const RectGrid grid(-1.05, 1.05, -1.05, 1.05, 631, 631);
    const fields::SampledField f = build_two_bubble(spec, grid);
    // both peaks carry the lifted level m + 2 log r_i = 9 + log 9
    const double peak = 9.0 + std::log(9.0);
    CHECK(f.eval({0.0, 0.0}) == doctest::Approx(peak).epsilon(1e-4));
    CHECK(f.eval({1.0 / 3.0, 0.0}) == doctest::Approx(peak).epsilon(1e-4));
    // symmetric under reflection through the midpoint of the two peaks
    for (const Vec2 p : {Vec2{0.05, 0.12}, Vec2{-0.2, 0.4}, Vec2{0.3, -0.1}}) {
        const Vec2 q{1.0 / 3.0 - p.x, p.y};
        CHECK(f.eval(p) == doctest::Approx(f.eval(q)).epsilon(1e-2).scale(1.0));
    }

    CHECK_THROWS_AS(build_two_bubble({0.9, 9.0, 9.0}, grid), InputError);
    CHECK_THROWS_AS(build_two_bubble(spec, RectGrid(-0.5, 0.5, -0.5, 0.5, 65, 65)), DomainError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(build_two_bubble({3.0, inf, 9.0}, grid), InputError);
    CHECK_THROWS_AS(build_two_bubble({3.0, 9.0, inf}, grid), InputError);
}

TEST_CASE("degenerate second level leaves a single bubble of full mass") {
    // the peak half-width is about 0.01, so the cell rule needs h near 1e-3
    const RectGrid grid(-1.05, 1.05, -1.05, 1.05, 2049, 2049);
    const double minf = -std::numeric_limits<double>::infinity();
    const fields::SampledField f = build_two_bubble({3.0, 9.0, minf}, grid);
    const double m = analysis::mass_on(f, [](Vec2) { return 1.0; },
                                       CompactRegion::ball({0.0, 0.0}, 1.0));
    CHECK(m == doctest::Approx(8.0 * kPi).epsilon(0.01));
}

TEST_CASE("parallel for visits every index and propagates failures") {
    std::vector<int> hits(101, 0);
    parallel_for(101, [&](int j) { hits[j] = j + 1; });
    for (int j = 0; j < 101; ++j) CHECK(hits[j] == j + 1);

    CHECK_THROWS_AS(parallel_for(16,
                                 [](int j) {
                                     if (j == 7) throw DomainError("boom");
                                 }),
                    DomainError);

    // an explicit cap still computes everything
    setenv("LLAB_THREADS", "2", 1);
    std::vector<int> capped(32, 0);
    parallel_for(32, [&](int j) { capped[j] = 1; });
    unsetenv("LLAB_THREADS");
    for (int v : capped) CHECK(v == 1);
}

TEST_CASE("annulus scenario emits a deterministic table and holds its claim") {
    ScenarioConfig cfg = ScenarioConfig::defaults("annulus-volume");
    const ScenarioResult a = run(cfg);
    const ScenarioResult b = run(cfg);
    CHECK(a.claims_hold);
    CHECK(a.violations.empty());
    REQUIRE(a.files.size() == 1);
    CHECK(a.files[0].first == "annulus-volume.csv");
    CHECK(a.files[0].second.rfind("# schema=annulus-volume-v1\n", 0) == 0);
    CHECK(a.files[0].second == b.files[0].second);
}

TEST_CASE("scenario output lands in the requested directory") {
    const auto dir = temp_dir("llab-out-test");
    ScenarioConfig cfg = ScenarioConfig::defaults("annulus-volume");
    cfg.index_list = parse_index_list("1..4");
    cfg.out_dir = dir.string();
    const ScenarioResult res = run(cfg);
    REQUIRE(res.files.size() == 1);
    std::ifstream in(dir / res.files[0].first, std::ios::binary);
    REQUIRE(in.good());
    std::string on_disk((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(on_disk == res.files[0].second);
    std::filesystem::remove_all(dir);
}

TEST_CASE("remark scenario classifies collapse with a falling statistic") {
    const ScenarioResult res = run(ScenarioConfig::defaults("remark-collapse"));
    CHECK(res.claims_hold);
    bool saw_classification = false;
    for (const auto& [name, content] : res.files) {
        if (name == "remark-collapse-classification.csv") {
            saw_classification = true;
            const auto cls = analysis::classification_from_csv(content);
            CHECK(cls.kind == analysis::BlowupCase::UniformCollapse);
        }
    }
    CHECK(saw_classification);
}

TEST_CASE("shafrir scenario fits the expected divergence rates") {
    const ScenarioResult res = run(ScenarioConfig::defaults("shafrir-supinf"));
    CHECK(res.claims_hold);
    CHECK(res.violations.empty());
    // one report per beta, one slope table, one sweep table
    CHECK(res.files.size() == 6);
}

TEST_CASE("split identity scenario stays within tolerance") {
    ScenarioConfig cfg = ScenarioConfig::defaults("split-identity");
    cfg.index_list = parse_index_list("1..8");
    const ScenarioResult res = run(cfg);
    CHECK(res.claims_hold);
    CHECK(res.violations.empty());
}

TEST_CASE("text format mirrors the csv tables") {
    ScenarioConfig cfg = ScenarioConfig::defaults("annulus-volume");
    cfg.index_list = parse_index_list("1..4");
    cfg.format = OutputFormat::Text;
    const ScenarioResult res = run(cfg);
    REQUIRE(res.files.size() == 1);
    CHECK(res.files[0].first == "annulus-volume.txt");
    CHECK(res.files[0].second.rfind("schema=annulus-volume-v1\n", 0) == 0);
    CHECK(res.files[0].second.find("[row 0]") != std::string::npos);
    CHECK(res.files[0].second.find("ratio=") != std::string::npos);
}

TEST_CASE("unknown scenarios are rejected") {
    ScenarioConfig cfg = ScenarioConfig::defaults("annulus-volume");
    cfg.scenario = "frobnicate";
    CHECK_THROWS_AS(run(cfg), InputError);
}
