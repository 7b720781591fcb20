#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/families.hpp"
#include "core/geometry.hpp"
#include "core/quadrature.hpp"
#include "core/sampled_field.hpp"

namespace liouville::analysis {

using quadrature::QuadratureSpec;

// Extrema over a compact region.  Closed-form profiles are strictly
// decreasing in r, so the extremum sits at the nearest/farthest radius the
// region reaches (exact).  Grid fields are scanned node-wise plus
// interpolated samples along the region rim.  Empty intersection with the
// geometry raises DomainError.
double sup_on(const families::RadialProfile& u, const CompactRegion& K);
double inf_on(const families::RadialProfile& u, const CompactRegion& K);
double sup_on(const fields::SampledField& u, const CompactRegion& K);
double inf_on(const fields::SampledField& u, const CompactRegion& K);

// integral of V e^u over K.  Radial data over centered regions reduces to a
// 1D adaptive integral split at the profile joints and weight breakpoints;
// off-center balls use the polar product rule below; rect grids use the
// cell-midpoint rule with an inclusion indicator.  Circles carry no area and
// integrate to 0.
double mass_on(const families::RadialProfile& u, const families::RadialWeight& V,
               const CompactRegion& K, const QuadratureSpec& q = {});
double mass_on(const fields::SampledField& u, const std::function<double(Vec2)>& V,
               const CompactRegion& K);

// sup - inf over a circle; identically 0 for radial data.
double boundary_oscillation(const families::RadialProfile& u, const CompactRegion& circle);
double boundary_oscillation(const fields::SampledField& u, const CompactRegion& circle);

// Peak-normalizing change of variables: level M at `center` turns u into
// u~(x) = u(center + x e^{-M/2}) - M, so u~(0) = 0 when M = u(center) and
// the equation -lap(u) = V e^u is preserved with V~(x) = V(center + x e^{-M/2}).
struct RescalingFrame {
    Vec2 center{};
    double level = 0.0;
    double scale() const { return std::exp(-0.5 * level); }
};

// Lazily evaluated scalar field, the result type of the rescaling views.
struct PointField {
    std::function<double(Vec2)> eval;
};

PointField rescale(const families::RadialProfile& u, const RescalingFrame& frame);
PointField rescale(const fields::SampledField& u, const RescalingFrame& frame);
PointField rescale_weight(const families::RadialWeight& V, const RescalingFrame& frame);

// Circle along which an integrand has a kink (piecewise-family joint seen
// through a change of variables); the polar rule splits each ray there.
struct BreakCircle {
    Vec2 center{};
    double radius = 0.0;
};

// integral of V e^u over the ball B(c, R) for lazy fields: periodic-trapezoid
// angles, graded Gauss radii split at the break circles; the angle count
// doubles until two consecutive levels agree to q.abs_tol (ToleranceError
// with the best value otherwise).
double mass_ball(const PointField& u, const PointField& V, Vec2 c, double R,
                 const QuadratureSpec& q = {}, const std::vector<BreakCircle>& breaks = {});

// The log-kernel decomposition around a peak:
//   lhs   = integral over B(c,R) of -(1/2pi) log|c - y| V e^u dy
//   term1 = (M/4pi) * integral of V~ e^{u~} over the blown-up ball
//   term2 = integral of -(1/2pi) log|x| V~ e^{u~} over the blown-up ball
// lhs = term1 + term2 holds exactly (log|c-y| = log scale + log|x| under the
// substitution); both sides are computed by independent quadratures and
// |lhs - term1 - term2| <= q.abs_tol is part of the contract.
struct SplitTerms {
    double lhs = 0.0;
    double term1 = 0.0;
    double term2 = 0.0;
    double residual() const { return lhs - term1 - term2; }
};
SplitTerms log_kernel_split(const families::RadialProfile& u, const families::RadialWeight& V,
                            const RescalingFrame& frame, double R, const QuadratureSpec& q = {});

// One member of a solution sequence: a closed-form profile (weight supplied
// by the family) or a grid field with an explicit weight.  `index` is the
// family parameter the reports tabulate against.
class SequenceMember {
public:
    static SequenceMember of_profile(families::RadialProfile p);
    static SequenceMember of_field(fields::SampledField u, std::function<double(Vec2)> V,
                                   double index);

    double index() const { return index_; }
    bool is_profile() const { return profile_.has_value(); }
    const families::RadialProfile& profile() const;
    const fields::SampledField& field() const;

    double sup(const CompactRegion& K) const;
    double inf(const CompactRegion& K) const;
    double sup_domain() const; // sup over the member's whole geometry
    double mass(const CompactRegion& K, const QuadratureSpec& q = {}) const;

private:
    std::optional<families::RadialProfile> profile_;
    std::shared_ptr<const fields::SampledField> field_;
    std::function<double(Vec2)> weight_;
    double index_ = 0.0;
};

enum class BlowupCase { Bounded, UniformCollapse, Concentration };
std::string_view to_string(BlowupCase c);
BlowupCase blowup_case_from(std::string_view s);

// Finite-sequence stand-ins for the asymptotic trichotomy.  A sequence
// collapses when every tracked region's sup is nonincreasing, ends at or
// below collapse_level, drops by min_drop overall and by half_drop over the
// last half; it is bounded when the last-half sup/inf stay inside [-big, big]
// and the last-half sup varies by at most flat; otherwise peaks above `peak`
// on the final member are inspected.  Peak masses are measured in shrinking
// balls and accepted once consecutive radii agree to `stabilization`
// relative; peaks closer than merge_radius collapse into the higher one.
struct ClassifierThresholds {
    double big = 50.0;
    double peak = 10.0;
    double merge_radius = 0.05;
    double mass_tol = 0.5;
    double stabilization = 0.01;
    std::vector<double> shrink_radii = {0.2, 0.1, 0.05};
    double collapse_level = -5.0;
    double min_drop = 2.0;
    double half_drop = 0.5;
    double flat = 1.0;
};

struct RegionTrace {
    std::string region; // short label, e.g. B(0,0;0.5)
    std::vector<double> sup;
    std::vector<double> inf;
};

struct BlowupClassification {
    BlowupCase kind = BlowupCase::Bounded;
    std::vector<Vec2> points;   // concentration points, value-descending
    std::vector<double> masses; // stabilized local mass per point
    std::vector<RegionTrace> diagnostics;
    bool indeterminate = false; // no rule matched; kind is the nearest case
    std::string note;
};

// Classify a sequence of >= 4 members sharing one geometry against the
// tracked regions.  Never guesses silently: when no rule matches, the
// nearest case is reported with indeterminate set and a note saying why.
// Concentration reports only peaks whose stabilized mass clears
// 4pi - mass_tol; weaker peaks are listed in the note.
BlowupClassification classify_sequence(const std::vector<SequenceMember>& seq,
                                       const std::vector<CompactRegion>& regions,
                                       const ClassifierThresholds& thr = {},
                                       const QuadratureSpec& q = {});

// Per-member statistic s_i = sup_domain u_i + c1 * inf_K u_i, its
// least-squares slope against log(index) over the last half of the sequence,
// and the empirical lower-bound constant c2 = max_i(-s_i).
struct SupInfReport {
    std::vector<double> index;
    std::vector<double> sup_omega;
    std::vector<double> inf_K;
    std::vector<double> statistic;
    double c1 = 1.0;
    std::optional<double> slope; // set once >= 4 members are present
    double c2 = 0.0;
};
SupInfReport supinf_statistic(const std::vector<SequenceMember>& seq, const CompactRegion& K,
                              double c1);

// Shortest decimal text that round-trips through strtod; CSV cell format.
std::string csv_value(double v);

// CSV: `# schema=<name>-v1` line, a header row, then data rows.  The text
// form mirrors the same numbers as key=value sections, one per index.
std::string to_csv(const SupInfReport& rep);
std::string to_text(const SupInfReport& rep);
SupInfReport supinf_from_csv(std::string_view csv);
std::string to_csv(const BlowupClassification& c);
std::string to_text(const BlowupClassification& c);
BlowupClassification classification_from_csv(std::string_view csv);

} // namespace liouville::analysis
