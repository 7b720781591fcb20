#include "core/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "core/analysis.hpp"
#include "core/families.hpp"
#include "core/pde_solver.hpp"

namespace liouville::experiments {

namespace {

using analysis::csv_value;
using analysis::SequenceMember;
using families::Family;
using families::RadialProfile;
using families::RadialWeight;

constexpr double kPi = 3.14159265358979323846;

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_num(std::string_view s, std::string_view what) {
    const std::string owned{trim(s)};
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (end == owned.c_str() || *end != '\0')
        throw InputError(std::string(what) + ": malformed number '" + owned + "'");
    return v;
}

int parse_int(std::string_view s, std::string_view what) {
    const double v = parse_num(s, what);
    if (v != std::floor(v) || std::fabs(v) > 1e9)
        throw InputError(std::string(what) + ": expected an integer");
    return static_cast<int>(v);
}

// Plain numeric table with the shared CSV/text emission.
struct Table {
    std::string schema;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string csv() const {
        std::string out = "# schema=" + schema + "\n";
        for (size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
        out += '\n';
        for (const auto& row : rows) {
            for (size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + csv_value(row[c]);
            out += '\n';
        }
        return out;
    }
    std::string text() const {
        std::string out = "schema=" + schema + "\n";
        for (size_t r = 0; r < rows.size(); ++r) {
            out += "[row " + std::to_string(r) + "]\n";
            for (size_t c = 0; c < rows[r].size(); ++c)
                out += columns[c] + "=" + csv_value(rows[r][c]) + '\n';
        }
        return out;
    }
};

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir);
    const std::string path = dir + "/" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    if (!out) throw IoError("cannot write " + path);
}

struct Emitter {
    const ScenarioConfig& cfg;
    ScenarioResult result = {};

    void add(const std::string& stem, const std::string& content) {
        const std::string name = stem + (cfg.format == OutputFormat::Csv ? ".csv" : ".txt");
        if (!cfg.out_dir.empty()) write_file(cfg.out_dir, name, content);
        result.files.emplace_back(name, content);
    }
    void add(const std::string& stem, const Table& t) {
        add(stem, cfg.format == OutputFormat::Csv ? t.csv() : t.text());
    }
    void add(const std::string& stem, const analysis::SupInfReport& r) {
        add(stem, cfg.format == OutputFormat::Csv ? analysis::to_csv(r) : analysis::to_text(r));
    }
    void add(const std::string& stem, const analysis::BlowupClassification& c) {
        add(stem, cfg.format == OutputFormat::Csv ? analysis::to_csv(c) : analysis::to_text(c));
    }
    void claim(bool ok, const std::string& what) {
        if (ok) return;
        result.claims_hold = false;
        result.violations.push_back(what);
    }
};

std::vector<SequenceMember> profile_members(Family family, const std::vector<double>& indices,
                                            double beta = 1.0) {
    std::vector<SequenceMember> out;
    out.reserve(indices.size());
    for (double i : indices) out.push_back(SequenceMember::of_profile(RadialProfile(family, i, beta)));
    return out;
}

ScenarioResult run_green_nullity(const ScenarioConfig& cfg) {
    Emitter em{cfg};
    const std::array<double, 3> radii{0.25, 0.5, 0.75};
    const RadialGrid grid(0.0, 1.0, cfg.n);
    const int count = static_cast<int>(cfg.index_list.size());
    std::vector<std::array<double, 3>> g(count);
    parallel_for(count, [&](int j) {
        const RadialProfile p(Family::StandardBubble, cfg.index_list[j]);
        const auto eps = [&p](double r) {
            const double d = p.du(std::clamp(r, p.r_min(), p.r_max()));
            return 1.0 + d * d;
        };
        for (size_t k = 0; k < radii.size(); ++k)
            g[j][k] = solver::green_coercive_radial(eps, radii[k], grid);
    });

    Table t{"green-nullity-v1", {"i", "g_at_0.25", "g_at_0.5", "g_at_0.75"}, {}};
    for (int j = 0; j < count; ++j)
        t.rows.push_back({cfg.index_list[j], g[j][0], g[j][1], g[j][2]});
    em.add("green-nullity", t);

    for (size_t k = 0; k < radii.size(); ++k)
        for (int j = 0; j + 1 < count; ++j)
            em.claim(g[j + 1][k] <= g[j][k],
                     "green values at r=" + csv_value(radii[k]) + " rise between i=" +
                         csv_value(cfg.index_list[j]) + " and i=" + csv_value(cfg.index_list[j + 1]));
    em.claim(g.back()[1] <= 0.1 * g.front()[1],
             "green value at r=0.5 did not drop to a tenth of the first index");
    return em.result;
}

ScenarioResult run_shafrir(const ScenarioConfig& cfg) {
    Emitter em{cfg};
    const CompactRegion K = CompactRegion::ball({0.0, 0.0}, cfg.k);

    Table slopes{"supinf-slopes-v1", {"beta", "slope", "expected"}, {}};
    for (double beta : cfg.beta_list) {
        std::vector<SequenceMember> members;
        for (double i : cfg.index_list)
            members.push_back(
                SequenceMember::of_profile(RadialProfile(Family::ShafrirScaled, i, beta)));
        const analysis::SupInfReport rep = analysis::supinf_statistic(members, K, cfg.c1);
        em.add("shafrir-supinf-beta-" + csv_value(beta), rep);
        const double expected = 2.0 - 2.0 * beta;
        const double slope = rep.slope.value_or(0.0);
        slopes.rows.push_back({beta, slope, expected});
        em.claim(std::fabs(slope - expected) <= 0.05 * std::fabs(expected),
                 "slope " + csv_value(slope) + " off the expected " + csv_value(expected) +
                     " at beta=" + csv_value(beta));
    }
    em.add("shafrir-supinf-slopes", slopes);

    // The descent beta -> 1 paired with a growing index; tabulated, no rate
    // is claimed for it.
    const std::array<double, 4> sweep_beta{1.5, 1.25, 1.125, 1.0625};
    const std::array<double, 4> sweep_i{16.0, 64.0, 256.0, 1024.0};
    std::vector<SequenceMember> sweep;
    for (size_t j = 0; j < sweep_beta.size(); ++j)
        sweep.push_back(
            SequenceMember::of_profile(RadialProfile(Family::ShafrirScaled, sweep_i[j], sweep_beta[j])));
    const analysis::SupInfReport srep = analysis::supinf_statistic(sweep, K, cfg.c1);
    Table st{"supinf-sweep-v1", {"j", "i", "beta", "s"}, {}};
    for (size_t j = 0; j < sweep_beta.size(); ++j)
        st.rows.push_back({static_cast<double>(j), sweep_i[j], sweep_beta[j], srep.statistic[j]});
    em.add("shafrir-supinf-sweep", st);
    return em.result;
}

ScenarioResult run_annulus(const ScenarioConfig& cfg) {
    Emitter em{cfg};
    Table t{"annulus-volume-v1", {"i", "mass", "ratio"}, {}};
    for (double i : cfg.index_list) {
        const RadialProfile p(Family::AnnulusFamily, i);
        const double mass = p.mass_quadrature(2.0);
        const double ratio = mass / (2.0 * kPi * i);
        t.rows.push_back({i, mass, ratio});
        if (i >= 8.0)
            em.claim(std::fabs(ratio - 1.0) <= 0.05,
                     "annulus mass at i=" + csv_value(i) + " is not within 5% of 2 pi i");
    }
    em.add("annulus-volume", t);
    return em.result;
}

ScenarioResult run_remark(const ScenarioConfig& cfg) {
    Emitter em{cfg};
    const CompactRegion K = CompactRegion::ball({0.0, 0.0}, cfg.k);
    const std::vector<SequenceMember> members =
        profile_members(Family::RemarkBubble, cfg.index_list);

    const analysis::BlowupClassification cls =
        analysis::classify_sequence(members, {K});
    em.add("remark-collapse-classification", cls);
    em.claim(cls.kind == analysis::BlowupCase::UniformCollapse && !cls.indeterminate,
             "remark sequence did not classify as UniformCollapse");

    const analysis::SupInfReport rep = analysis::supinf_statistic(members, K, cfg.c1);
    em.add("remark-collapse-supinf", rep);
    for (size_t j = 0; j + 1 < rep.statistic.size(); ++j)
        em.claim(rep.statistic[j + 1] < rep.statistic[j],
                 "sup+inf statistic is not strictly decreasing at step " + std::to_string(j));
    return em.result;
}

ScenarioResult run_quantization(const ScenarioConfig& cfg) {
    Emitter em{cfg};
    const RadialGrid grid(0.0, 1.0, cfg.n);
    const int count = static_cast<int>(cfg.index_list.size());
    std::vector<std::array<double, 3>> rows(count); // g, u0, mass
    parallel_for(count, [&](int j) {
        const RadialProfile p(Family::StandardBubble, cfg.index_list[j]);
        const double g = p.u(1.0);
        const solver::SolveReport rep =
            solver::solve_radial_bvp(g, RadialWeight::constant(1.0), solver::Branch::High, grid);
        const double mass = analysis::mass_on(rep.solution, [](Vec2) { return 1.0; },
                                              CompactRegion::ball({0.0, 0.0}, 1.0));
        rows[j] = {g, rep.u0, mass};
    });

    Table t{"bubble-quantization-v1", {"i", "g", "u0", "mass"}, {}};
    for (int j = 0; j < count; ++j)
        t.rows.push_back({cfg.index_list[j], rows[j][0], rows[j][1], rows[j][2]});
    em.add("bubble-quantization", t);
    em.claim(std::fabs(rows.back()[2] / (8.0 * kPi) - 1.0) <= 0.02,
             "high-branch mass at the last index is not within 2% of 8 pi");
    return em.result;
}

ScenarioResult run_split(const ScenarioConfig& cfg) {
    Emitter em{cfg};
    const int count = static_cast<int>(cfg.index_list.size());
    std::vector<analysis::SplitTerms> terms(count);
    parallel_for(count, [&](int j) {
        const RadialProfile p(Family::StandardBubble, cfg.index_list[j]);
        const analysis::RescalingFrame frame{{0.0, 0.0}, p.u(0.0)};
        terms[j] = analysis::log_kernel_split(p, RadialWeight::constant(1.0), frame, 0.5);
    });

    Table t{"split-identity-v1", {"i", "lhs", "term1", "term2", "residual"}, {}};
    double worst = 0.0;
    for (int j = 0; j < count; ++j) {
        t.rows.push_back({cfg.index_list[j], terms[j].lhs, terms[j].term1, terms[j].term2,
                          terms[j].residual()});
        worst = std::max(worst, std::fabs(terms[j].residual()));
    }
    em.add("split-identity", t);
    em.claim(worst <= 1e-6,
             "log-kernel split residual " + csv_value(worst) + " exceeds 1e-6");
    return em.result;
}

ScenarioResult run_two_bubble(const ScenarioConfig& cfg) {
    Emitter em{cfg};
    const RectGrid grid(-1.05, 1.05, -1.05, 1.05, cfg.nx, cfg.nx);
    const int count = static_cast<int>(cfg.index_list.size());
    std::vector<fields::SampledField> built;
    built.reserve(count);
    for (int j = 0; j < count; ++j)
        built.push_back(fields::SampledField::on_rect(
            grid, std::vector<double>(static_cast<size_t>(grid.nx) * grid.ny, 0.0)));
    parallel_for(count, [&](int j) {
        built[j] = build_two_bubble(TwoBubbleSpec::from_level(cfg.index_list[j]), grid);
    });

    const auto unit_weight = [](Vec2) { return 1.0; };
    std::vector<SequenceMember> members;
    Table summary{"two-bubble-v1", {"m_tilde", "r_i", "peak_level", "osc", "mass"}, {}};
    for (int j = 0; j < count; ++j) {
        const double m_tilde = cfg.index_list[j];
        const double r_i = std::sqrt(m_tilde);
        const double osc =
            analysis::boundary_oscillation(built[j], CompactRegion::circle(1.0));
        const double mass = analysis::mass_on(built[j], unit_weight,
                                              CompactRegion::ball({0.0, 0.0}, 1.0));
        summary.rows.push_back({m_tilde, r_i, m_tilde + 2.0 * std::log(r_i), osc, mass});
        em.claim(osc > 0.0, "boundary oscillation vanished at level " + csv_value(m_tilde));
        members.push_back(SequenceMember::of_field(std::move(built[j]), unit_weight, r_i));
    }
    em.add("two-bubble-summary", summary);

    const analysis::BlowupClassification cls =
        analysis::classify_sequence(members, {CompactRegion::ball({0.0, 0.0}, 1.0)});
    em.add("two-bubble-classification", cls);
    em.claim(cls.kind == analysis::BlowupCase::Concentration && !cls.indeterminate,
             "two-bubble sequence did not classify as Concentration");
    const double total = summary.rows.back()[4];
    em.claim(std::fabs(total / (16.0 * kPi) - 1.0) <= 0.1,
             "total mass " + csv_value(total) + " is not within 10% of 16 pi");

    const analysis::SupInfReport rep =
        analysis::supinf_statistic(members, CompactRegion::ball({0.0, 0.0}, cfg.k), cfg.c1);
    em.add("two-bubble-supinf", rep);
    for (size_t j = 0; j + 1 < rep.statistic.size(); ++j)
        em.claim(rep.statistic[j + 1] < rep.statistic[j],
                 "sup+inf statistic is not strictly decreasing at step " + std::to_string(j));
    return em.result;
}

} // namespace

std::vector<double> parse_index_list(std::string_view text) {
    std::vector<double> out;
    const std::string_view s = trim(text);
    const size_t range = s.find("..");
    if (range == std::string_view::npos) {
        size_t pos = 0;
        while (pos <= s.size()) {
            const size_t nxt = std::min(s.find(',', pos), s.size());
            out.push_back(parse_num(s.substr(pos, nxt - pos), "index list"));
            pos = nxt + 1;
        }
        return out;
    }
    const double a = parse_num(s.substr(0, range), "index list");
    std::string_view rest = s.substr(range + 2);
    double step = 1.0;
    bool geometric = false;
    const size_t colon = rest.find(':');
    if (colon != std::string_view::npos) {
        std::string_view spec = trim(rest.substr(colon + 1));
        rest = rest.substr(0, colon);
        if (!spec.empty() && spec.front() == 'x') {
            geometric = true;
            step = parse_num(spec.substr(1), "index list ratio");
            if (!(step > 1.0)) throw InputError("index list: geometric ratio must exceed 1");
        } else {
            step = parse_num(spec, "index list step");
            if (!(step > 0.0)) throw InputError("index list: step must be positive");
        }
    }
    const double b = parse_num(rest, "index list");
    if (!(b >= a)) throw InputError("index list: range end below start");
    if (geometric && !(a > 0.0)) throw InputError("index list: geometric range needs a > 0");
    for (double v = a; v <= b * (1.0 + 1e-12) + 1e-12; v = geometric ? v * step : v + step) {
        out.push_back(v);
        if (out.size() > 100000) throw InputError("index list: too many entries");
    }
    return out;
}

ScenarioConfig ScenarioConfig::defaults(std::string_view scenario) {
    ScenarioConfig c;
    c.scenario = std::string(scenario);
    if (scenario == "example1-green-nullity") {
        c.index_list = parse_index_list("1..100");
        c.n = 8193;
    } else if (scenario == "shafrir-supinf") {
        c.index_list = parse_index_list("16..4096:x2");
        c.beta_list = {1.25, 1.5, 2.0, 3.0};
        c.c1 = 1.0;
        c.k = 0.5;
    } else if (scenario == "annulus-volume") {
        c.index_list = parse_index_list("1..32");
    } else if (scenario == "remark-collapse") {
        c.index_list = parse_index_list("4..256:x2");
        c.c1 = 1.0;
        c.k = 0.5;
    } else if (scenario == "bubble-quantization") {
        c.index_list = {2.0, 4.0, 8.0, 16.0, 32.0};
        c.n = 4097;
    } else if (scenario == "split-identity") {
        c.index_list = parse_index_list("1..64");
    } else if (scenario == "two-bubble") {
        c.index_list = {4.0, 6.0, 8.0, 10.0};
        c.nx = 1024;
        c.c1 = 2.0;
        c.k = 0.5;
    } else {
        throw InputError("unknown scenario: " + std::string(scenario));
    }
    return c;
}

ScenarioConfig ScenarioConfig::from_file(std::string_view scenario, const std::string& path) {
    ScenarioConfig c = defaults(scenario);
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file " + path);
    std::string line;
    while (std::getline(in, line)) {
        const std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        const size_t eq = t.find('=');
        if (eq == std::string_view::npos)
            throw InputError("config: expected key=value, got '" + std::string(t) + "'");
        c.apply(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return c;
}

void ScenarioConfig::apply(std::string_view key, std::string_view value) {
    if (key == "i" || key == "mu") index_list = parse_index_list(value);
    else if (key == "beta_list") beta_list = parse_index_list(value);
    else if (key == "c1") c1 = parse_num(value, "c1");
    else if (key == "k") k = parse_num(value, "k");
    else if (key == "n") n = parse_int(value, "n");
    else if (key == "nx") nx = parse_int(value, "nx");
    else if (key == "out") out_dir = std::string(value);
    else if (key == "format") {
        if (value == "csv") format = OutputFormat::Csv;
        else if (value == "text") format = OutputFormat::Text;
        else throw InputError("config: format must be csv or text");
    } else {
        throw InputError("config: unknown key '" + std::string(key) + "'");
    }
}

void ScenarioConfig::validate() const {
    if (index_list.empty()) throw InputError("config: index list is empty");
    for (size_t j = 0; j + 1 < index_list.size(); ++j)
        if (!(index_list[j] < index_list[j + 1]))
            throw InputError("config: index list must be strictly increasing");
    if (n < 65 || n > (1 << 20)) throw InputError("config: n out of range [65, 1048576]");
    if (nx < 33 || nx > 8193) throw InputError("config: nx out of range [33, 8193]");
    if (!(k > 0.0)) throw InputError("config: k must be positive");
    if (!std::isfinite(c1)) throw InputError("config: c1 must be finite");
    for (double b : beta_list)
        if (!(b >= 1.0)) throw InputError("config: beta values must be at least 1");
}

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{
        "example1-green-nullity", "shafrir-supinf",     "annulus-volume", "remark-collapse",
        "bubble-quantization",    "split-identity",     "two-bubble"};
    return names;
}

ScenarioResult run(const ScenarioConfig& cfg) {
    cfg.validate();
    if (cfg.scenario == "example1-green-nullity") return run_green_nullity(cfg);
    if (cfg.scenario == "shafrir-supinf") return run_shafrir(cfg);
    if (cfg.scenario == "annulus-volume") return run_annulus(cfg);
    if (cfg.scenario == "remark-collapse") return run_remark(cfg);
    if (cfg.scenario == "bubble-quantization") return run_quantization(cfg);
    if (cfg.scenario == "split-identity") return run_split(cfg);
    if (cfg.scenario == "two-bubble") return run_two_bubble(cfg);
    throw InputError("unknown scenario: " + cfg.scenario);
}

TwoBubbleSpec TwoBubbleSpec::from_level(double m_tilde) {
    if (!(m_tilde > 1.0)) throw InputError("two-bubble: level must exceed 1");
    return {std::sqrt(m_tilde), m_tilde, m_tilde};
}

fields::SampledField build_two_bubble(const TwoBubbleSpec& spec, const RectGrid& grid) {
    if (!(spec.r_i > 1.0)) throw InputError("two-bubble: separation index must exceed 1");
    if (!std::isfinite(spec.m0)) throw InputError("two-bubble: first peak level must be finite");
    const bool second = std::isfinite(spec.m1);
    if (!second && !(spec.m1 < 0.0))
        throw InputError("two-bubble: second peak level must be finite or -infinity");
    if (grid.x0 > -1.0 || grid.x1 < 1.0 || grid.y0 > -1.0 || grid.y1 < 1.0)
        throw DomainError("two-bubble: grid must cover the closed unit ball");

    // peak level m at center c: m - 2 log(1 + e^m |x-c|^2 / 8), kept in log
    // space so large m cannot overflow
    const auto bump = [](double m, Vec2 c, Vec2 x) {
        const double q = (x - c).norm2() / 8.0;
        if (q == 0.0) return m;
        const double t = m + std::log(q);
        const double soft = t > 36.0 ? t : std::log1p(std::exp(t));
        return m - 2.0 * soft;
    };
    const auto lse = [](double a, double b) {
        if (a < b) std::swap(a, b);
        if (b == -std::numeric_limits<double>::infinity()) return a;
        return a + std::log1p(std::exp(b - a));
    };

    const double r = spec.r_i;
    const double lift = 2.0 * std::log(r);
    const double m1 = second ? spec.m1 : -std::numeric_limits<double>::infinity();
    fields::SampledField f = fields::SampledField::sample_rect(grid, [&](Vec2 y) {
        const Vec2 x = y * r;
        const double b0 = bump(spec.m0, {0.0, 0.0}, x);
        const double b1 = second ? bump(m1, {1.0, 0.0}, x)
                                 : -std::numeric_limits<double>::infinity();
        return lse(b0, b1) + lift;
    });
    f.set_metadata("two-bubble r_i=" + csv_value(spec.r_i) + " m0=" + csv_value(spec.m0) +
                   " m1=" + csv_value(m1));
    return f;
}

void parallel_for(int count, const std::function<void(int)>& body) {
    if (count <= 0) return;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    if (const char* env = std::getenv("LLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) workers = static_cast<int>(std::min(v, 256L));
    }
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int j = 0; j < count; ++j) body(j);
        return;
    }

    std::atomic<int> next{0};
    std::mutex mu;
    std::exception_ptr first;
    const auto work = [&] {
        while (true) {
            const int j = next.fetch_add(1);
            if (j >= count) return;
            try {
                body(j);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(mu);
                if (!first) first = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (first) std::rethrow_exception(first);
}

} // namespace liouville::experiments
