#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/geometry.hpp"
#include "core/sampled_field.hpp"

namespace liouville::experiments {

enum class OutputFormat { Csv, Text };

// Index list grammar: "a,b,c" explicit values, "a..b" step 1,
// "a..b:s" arithmetic step s, "a..b:x2" geometric ratio 2.
std::vector<double> parse_index_list(std::string_view text);

// Per-scenario configuration.  defaults(name) fills the documented defaults;
// a config file (line-oriented key=value, '#' comments) overrides them.
// Recognized keys: i (or mu) = index list, beta_list, c1, k, n, nx, out,
// format.  Unknown keys or malformed values raise InputError.
struct ScenarioConfig {
    std::string scenario;
    std::vector<double> index_list;
    std::vector<double> beta_list;
    double c1 = 1.0;
    double k = 0.5;     // radius of the inf region
    int n = 8193;       // radial resolution
    int nx = 1024;      // 2D resolution per axis
    std::string out_dir;
    OutputFormat format = OutputFormat::Csv;

    static ScenarioConfig defaults(std::string_view scenario);
    static ScenarioConfig from_file(std::string_view scenario, const std::string& path);
    void apply(std::string_view key, std::string_view value);
    void validate() const;
};

// Outcome of one scenario run: emitted tables (name -> full content, already
// written under out_dir when it is nonempty) and the in-process claim checks.
struct ScenarioResult {
    bool claims_hold = true;
    std::vector<std::string> violations;
    std::vector<std::pair<std::string, std::string>> files;
};

const std::vector<std::string>& scenario_names();

// Runs one scenario.  Unknown scenario names raise InputError; numerical
// claim violations do not throw, they land in `violations` with the tables
// still emitted.
ScenarioResult run(const ScenarioConfig& config);

// Synthetic two-peak test data: the log-sum-exp superposition of two
// closed-form bubbles with peak levels m0, m1 at 0 and (1,0), pushed through
// the separation map u(y) = u~(r_i y) + 2 log r_i, so the final peaks sit at
// 0 and (1/r_i, 0) with levels m_j + 2 log r_i.  Not an exact solution;
// documented test data for the classifier.  m1 = -infinity drops the second
// peak.
struct TwoBubbleSpec {
    double r_i = 3.0;
    double m0 = 9.0;
    double m1 = 9.0;

    static TwoBubbleSpec from_level(double m_tilde); // r_i = sqrt(m_tilde)
};
fields::SampledField build_two_bubble(const TwoBubbleSpec& spec, const RectGrid& grid);

// Runs body(0..count-1), splitting across threads.  LLAB_THREADS caps the
// worker count (1 forces serial); results must be written to per-index slots,
// emission happens after the join in index order.  The first exception
// thrown by any body is rethrown on the calling thread.
void parallel_for(int count, const std::function<void(int)>& body);

} // namespace liouville::experiments
