#include "core/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace liouville::analysis {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

std::string region_label(const CompactRegion& K) {
    char buf[96];
    switch (K.kind) {
    case CompactRegion::Kind::Ball:
        std::snprintf(buf, sizeof buf, "B(%.6g,%.6g;%.6g)", K.center.x, K.center.y, K.r_out);
        break;
    case CompactRegion::Kind::Annulus:
        std::snprintf(buf, sizeof buf, "A(%.6g,%.6g)", K.r_in, K.r_out);
        break;
    case CompactRegion::Kind::Circle:
        std::snprintf(buf, sizeof buf, "C(%.6g)", K.r_out);
        break;
    }
    return buf;
}

// Radii of K clamped into [r_min, r_max]; DomainError when disjoint.
std::pair<double, double> clamped_range(const CompactRegion& K, double r_min, double r_max) {
    auto [lo, hi] = K.radial_range();
    const double tol = 1e-12 * std::max(1.0, r_max);
    if (hi < r_min - tol || lo > r_max + tol)
        throw DomainError("region does not meet the data's radial domain");
    return {std::clamp(lo, r_min, r_max), std::clamp(hi, r_min, r_max)};
}

int rim_samples(int nx, int ny) { return std::clamp(4 * std::max(nx, ny), 512, 8192); }

// min/max over the nodes inside K plus interpolated samples on the region
// rim; circles are rim-only (they carry no nodes in general).
std::pair<double, double> field_extrema(const fields::SampledField& u, const CompactRegion& K) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    const auto take = [&](double v) { lo = std::min(lo, v), hi = std::max(hi, v); };

    if (u.is_rect()) {
        const RectGrid& g = u.rect();
        const double tol = 1e-9 * std::max(g.hx(), g.hy());
        if (K.kind != CompactRegion::Kind::Circle) {
            for (int ix = 0; ix < g.nx; ++ix)
                for (int iy = 0; iy < g.ny; ++iy)
                    if (K.contains({g.xnode(ix), g.ynode(iy)}, tol)) take(u.at(ix, iy));
        }
        const int n = rim_samples(g.nx, g.ny);
        const auto sample_circle = [&](double radius) {
            for (int k = 0; k < n; ++k) {
                const double th = kTwoPi * k / n;
                take(u.eval(K.center + Vec2{radius * std::cos(th), radius * std::sin(th)}));
            }
        };
        sample_circle(K.r_out);
        if (K.kind == CompactRegion::Kind::Annulus && K.r_in > 0.0) sample_circle(K.r_in);
    } else {
        const RadialGrid& g = u.radial();
        auto [rlo, rhi] = clamped_range(K, g.r_min, g.r_max);
        take(u.eval_radial(rlo));
        take(u.eval_radial(rhi));
        for (int j = 0; j < g.n; ++j) {
            const double r = g.node(j);
            if (r > rlo && r < rhi) take(u.at(j));
        }
    }
    if (!(lo <= hi)) throw DomainError("region contains no sample points of the field");
    return {lo, hi};
}

double parse_double(std::string_view s) {
    const std::string owned(s);
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (end == owned.c_str() || *end != '\0') throw InputError("malformed number: " + owned);
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    size_t pos = 0;
    while (true) {
        const size_t nxt = s.find(sep, pos);
        if (nxt == std::string_view::npos) {
            out.push_back(s.substr(pos));
            return out;
        }
        out.push_back(s.substr(pos, nxt - pos));
        pos = nxt + 1;
    }
}

} // namespace

double sup_on(const families::RadialProfile& u, const CompactRegion& K) {
    auto [rlo, rhi] = clamped_range(K, u.r_min(), u.r_max());
    (void)rhi;
    return u.u(rlo); // profiles decrease in r
}

double inf_on(const families::RadialProfile& u, const CompactRegion& K) {
    auto [rlo, rhi] = clamped_range(K, u.r_min(), u.r_max());
    (void)rlo;
    return u.u(rhi);
}

double sup_on(const fields::SampledField& u, const CompactRegion& K) {
    return field_extrema(u, K).second;
}

double inf_on(const fields::SampledField& u, const CompactRegion& K) {
    return field_extrema(u, K).first;
}

namespace {

// integral over B(c,R) of k(t) F(c + t e(theta)) t dt dtheta with k = 1 or
// k(t) = -log t; rays are split at the break circles and graded toward both
// piece ends, angles double until two levels agree to q.abs_tol.
double polar_integral(const std::function<double(Vec2)>& F, Vec2 c, double R, bool log_kernel,
                      const std::vector<BreakCircle>& breaks, const QuadratureSpec& q,
                      const char* what) {
    if (!(R > 0.0)) throw DomainError("polar rule: radius must be positive");
    q.validate();

    const auto along_ray = [&](double theta) {
        const Vec2 e{std::cos(theta), std::sin(theta)};
        std::vector<double> ts;
        for (const BreakCircle& bc : breaks) {
            const Vec2 A = c - bc.center;
            const double half = e.dot(A);
            const double disc = half * half - (A.norm2() - bc.radius * bc.radius);
            if (disc < 0.0) continue;
            const double sq = std::sqrt(disc);
            for (const double t : {-half - sq, -half + sq})
                if (t > 1e-14 * R && t < R * (1.0 - 1e-14)) ts.push_back(t);
        }
        std::sort(ts.begin(), ts.end());
        ts.erase(std::unique(ts.begin(), ts.end(),
                             [R](double a, double b) { return std::fabs(a - b) < 1e-13 * R; }),
                 ts.end());
        const auto f = [&](double t) {
            const double k = log_kernel ? -std::log(t) : 1.0;
            return k * F(c + e * t) * t;
        };
        return quadrature::graded_with_breakpoints(f, 0.0, R, ts, q.radial_nodes);
    };

    int n = q.angular_nodes;
    double prev = quadrature::periodic_trapezoid(along_ray, n);
    for (int round = 0; round < 3; ++round) {
        n *= 2;
        const double cur = quadrature::periodic_trapezoid(along_ray, n);
        if (std::fabs(cur - prev) <= q.abs_tol) return cur;
        prev = cur;
    }
    throw ToleranceError(what, prev, std::fabs(prev));
}

} // namespace

double mass_on(const families::RadialProfile& u, const families::RadialWeight& V,
               const CompactRegion& K, const QuadratureSpec& q) {
    if (K.kind == CompactRegion::Kind::Circle) return 0.0;

    const double c_norm = K.center.norm();
    const bool centered = c_norm <= 1e-14 * std::max(1.0, u.r_max());
    if (K.kind == CompactRegion::Kind::Annulus || centered) {
        auto [rlo, rhi] = clamped_range(K, u.r_min(), u.r_max());
        if (rhi <= rlo) return 0.0;
        std::vector<double> breaks;
        for (double b : u.joints())
            if (b > rlo && b < rhi) breaks.push_back(b);
        for (double b : V.breakpoints)
            if (b > rlo && b < rhi) breaks.push_back(b);
        std::sort(breaks.begin(), breaks.end());
        const auto f = [&](double r) { return V.eval(r) * std::exp(u.u(r)) * r; };
        return kTwoPi * quadrature::adaptive(f, rlo, rhi, breaks);
    }

    // off-center ball: the full ball must sit inside the domain annulus
    auto [lo, hi] = K.radial_range();
    const double tol = 1e-12 * std::max(1.0, u.r_max());
    if (lo < u.r_min() - tol || hi > u.r_max() + tol)
        throw DomainError("mass region leaves the profile domain");
    std::vector<BreakCircle> breaks;
    for (double b : u.joints()) breaks.push_back({{0.0, 0.0}, b});
    for (double b : V.breakpoints) breaks.push_back({{0.0, 0.0}, b});
    const auto F = [&](Vec2 p) {
        const double r = std::clamp(p.norm(), u.r_min(), u.r_max());
        return V.eval(r) * std::exp(u.u(r));
    };
    return polar_integral(F, K.center, K.r_out, false, breaks, q, "region mass");
}

double mass_on(const fields::SampledField& u, const std::function<double(Vec2)>& V,
               const CompactRegion& K) {
    if (K.kind == CompactRegion::Kind::Circle) return 0.0;

    if (u.is_rect()) {
        // cell-midpoint rule with an inclusion indicator
        const RectGrid& g = u.rect();
        const double hx = g.hx(), hy = g.hy();
        double total = 0.0;
        for (int ix = 0; ix + 1 < g.nx; ++ix)
            for (int iy = 0; iy + 1 < g.ny; ++iy) {
                const Vec2 mid{g.x0 + hx * (ix + 0.5), g.y0 + hy * (iy + 0.5)};
                if (!K.contains(mid)) continue;
                const double um = 0.25 * (u.at(ix, iy) + u.at(ix + 1, iy) + u.at(ix, iy + 1) +
                                          u.at(ix + 1, iy + 1));
                total += V(mid) * std::exp(um);
            }
        return total * hx * hy;
    }

    const RadialGrid& g = u.radial();
    if (K.center.norm() > 1e-14 * std::max(1.0, g.r_max))
        throw DomainError("radial grid mass needs a centered region");
    auto [rlo, rhi] = clamped_range(K, g.r_min, g.r_max);
    if (rhi <= rlo) return 0.0;
    std::vector<double> rs{rlo};
    for (int j = 0; j < g.n; ++j) {
        const double r = g.node(j);
        if (r > rlo && r < rhi) rs.push_back(r);
    }
    rs.push_back(rhi);
    const auto f = [&](double r) { return V({r, 0.0}) * std::exp(u.eval_radial(r)) * r; };
    double total = 0.0;
    double fl = f(rs[0]);
    for (size_t k = 1; k < rs.size(); ++k) {
        const double fr = f(rs[k]);
        total += 0.5 * (rs[k] - rs[k - 1]) * (fl + fr);
        fl = fr;
    }
    return kTwoPi * total;
}

double boundary_oscillation(const families::RadialProfile& u, const CompactRegion& circle) {
    if (circle.kind != CompactRegion::Kind::Circle)
        throw InputError("boundary oscillation expects a circle region");
    clamped_range(circle, u.r_min(), u.r_max()); // domain check only
    return 0.0;
}

double boundary_oscillation(const fields::SampledField& u, const CompactRegion& circle) {
    if (circle.kind != CompactRegion::Kind::Circle)
        throw InputError("boundary oscillation expects a circle region");
    auto [lo, hi] = field_extrema(u, circle);
    return hi - lo;
}

PointField rescale(const families::RadialProfile& u, const RescalingFrame& frame) {
    const double c = frame.center.norm();
    if (c < u.r_min() || c > u.r_max())
        throw DomainError("rescaling frame center outside the profile domain");
    const double s = frame.scale(), M = frame.level;
    const Vec2 y = frame.center;
    return {[u, y, s, M](Vec2 x) { return u.u((y + x * s).norm()) - M; }};
}

PointField rescale(const fields::SampledField& u, const RescalingFrame& frame) {
    auto held = std::make_shared<fields::SampledField>(u);
    const double s = frame.scale(), M = frame.level;
    const Vec2 y = frame.center;
    held->eval(y); // center must be interior
    return {[held, y, s, M](Vec2 x) { return held->eval(y + x * s) - M; }};
}

PointField rescale_weight(const families::RadialWeight& V, const RescalingFrame& frame) {
    const double s = frame.scale();
    const Vec2 y = frame.center;
    const auto eval = V.eval;
    return {[eval, y, s](Vec2 x) { return eval((y + x * s).norm()); }};
}

double mass_ball(const PointField& u, const PointField& V, Vec2 c, double R,
                 const QuadratureSpec& q, const std::vector<BreakCircle>& breaks) {
    const auto F = [&](Vec2 p) { return V.eval(p) * std::exp(u.eval(p)); };
    return polar_integral(F, c, R, false, breaks, q, "rescaled mass");
}

SplitTerms log_kernel_split(const families::RadialProfile& u, const families::RadialWeight& V,
                            const RescalingFrame& frame, double R, const QuadratureSpec& q) {
    if (!(R > 0.0)) throw DomainError("log-kernel split: radius must be positive");
    const double c_norm = frame.center.norm();
    const double tol = 1e-12 * std::max(1.0, u.r_max());
    if (c_norm + R > u.r_max() + tol || (u.r_min() > 0.0 && c_norm - R < u.r_min() - tol))
        throw DomainError("log-kernel split: ball leaves the profile domain");

    const double M = frame.level;
    const double s = frame.scale();
    const double T = R / s;

    std::vector<double> radii = u.joints();
    radii.insert(radii.end(), V.breakpoints.begin(), V.breakpoints.end());
    std::sort(radii.begin(), radii.end());

    SplitTerms out;
    if (c_norm <= 1e-14 && u.r_min() == 0.0) {
        std::vector<double> inner, scaled;
        for (double b : radii) {
            if (b > 0.0 && b < R) inner.push_back(b);
            if (b / s > 0.0 && b / s < T) scaled.push_back(b / s);
        }
        const auto side = [&](double t) { return V.eval(t) * std::exp(u.u(t)) * t; };
        out.lhs = -quadrature::graded_with_breakpoints(
            [&](double t) { return std::log(t) * side(t); }, 0.0, R, inner, q.radial_nodes);
        const auto resc = [&](double t) { return V.eval(s * t) * std::exp(u.u(s * t) - M) * t; };
        const double mass = kTwoPi * quadrature::adaptive(resc, 0.0, T, scaled);
        out.term1 = M / (4.0 * kPi) * mass;
        out.term2 = -quadrature::graded_with_breakpoints(
            [&](double t) { return std::log(t) * resc(t); }, 0.0, T, scaled, q.radial_nodes);
        return out;
    }

    std::vector<BreakCircle> inner, scaled;
    for (double b : radii) {
        inner.push_back({{0.0, 0.0}, b});
        scaled.push_back({frame.center * (-1.0 / s), b / s});
    }
    const auto Fu = [&](Vec2 p) { return V.eval(p.norm()) * std::exp(u.u(p.norm())); };
    out.lhs = polar_integral(Fu, frame.center, R, true, inner, q, "log-kernel integral") / kTwoPi;
    const PointField ru = rescale(u, frame);
    const PointField rv = rescale_weight(V, frame);
    out.term1 = M / (4.0 * kPi) * mass_ball(ru, rv, {0.0, 0.0}, T, q, scaled);
    const auto Fr = [&](Vec2 x) { return rv.eval(x) * std::exp(ru.eval(x)); };
    out.term2 =
        polar_integral(Fr, {0.0, 0.0}, T, true, scaled, q, "log-kernel integral") / kTwoPi;
    return out;
}

SequenceMember SequenceMember::of_profile(families::RadialProfile p) {
    SequenceMember m;
    m.index_ = p.index();
    m.profile_ = std::move(p);
    return m;
}

SequenceMember SequenceMember::of_field(fields::SampledField u, std::function<double(Vec2)> V,
                                        double index) {
    SequenceMember m;
    m.field_ = std::make_shared<fields::SampledField>(std::move(u));
    m.weight_ = std::move(V);
    m.index_ = index;
    return m;
}

const families::RadialProfile& SequenceMember::profile() const {
    if (!profile_) throw InputError("sequence member holds a field, not a profile");
    return *profile_;
}

const fields::SampledField& SequenceMember::field() const {
    if (!field_) throw InputError("sequence member holds a profile, not a field");
    return *field_;
}

double SequenceMember::sup(const CompactRegion& K) const {
    return profile_ ? sup_on(*profile_, K) : sup_on(*field_, K);
}

double SequenceMember::inf(const CompactRegion& K) const {
    return profile_ ? inf_on(*profile_, K) : inf_on(*field_, K);
}

double SequenceMember::sup_domain() const {
    if (profile_) return profile_->u(profile_->r_min());
    return *std::max_element(field_->values().begin(), field_->values().end());
}

double SequenceMember::mass(const CompactRegion& K, const QuadratureSpec& q) const {
    if (profile_) return mass_on(*profile_, families::RadialWeight::of_profile(*profile_), K, q);
    return mass_on(*field_, weight_, K);
}

std::string_view to_string(BlowupCase c) {
    switch (c) {
    case BlowupCase::Bounded: return "Bounded";
    case BlowupCase::UniformCollapse: return "UniformCollapse";
    case BlowupCase::Concentration: return "Concentration";
    }
    return "Bounded";
}

BlowupCase blowup_case_from(std::string_view s) {
    if (s == "Bounded") return BlowupCase::Bounded;
    if (s == "UniformCollapse") return BlowupCase::UniformCollapse;
    if (s == "Concentration") return BlowupCase::Concentration;
    throw InputError("unknown classification case: " + std::string(s));
}

namespace {

void check_common_geometry(const std::vector<SequenceMember>& seq) {
    const bool radial = seq.front().is_profile();
    for (const SequenceMember& m : seq)
        if (m.is_profile() != radial)
            throw InputError("classifier: sequence mixes profiles and grid fields");
    if (radial) {
        const auto& first = seq.front().profile();
        for (const SequenceMember& m : seq)
            if (m.profile().r_min() != first.r_min() || m.profile().r_max() != first.r_max())
                throw InputError("classifier: profiles live on different radial domains");
        return;
    }
    const auto& f0 = seq.front().field();
    for (const SequenceMember& m : seq) {
        const auto& f = m.field();
        if (f.is_rect() != f0.is_rect())
            throw InputError("classifier: fields live on different geometries");
        if (f0.is_rect()) {
            const RectGrid &a = f0.rect(), &b = f.rect();
            if (a.x0 != b.x0 || a.x1 != b.x1 || a.y0 != b.y0 || a.y1 != b.y1)
                throw InputError("classifier: fields live on different rectangles");
        } else if (f0.radial().r_min != f.radial().r_min ||
                   f0.radial().r_max != f.radial().r_max) {
            throw InputError("classifier: fields live on different radial domains");
        }
    }
}

struct PeakCandidate {
    Vec2 at;
    double value;
};

std::vector<PeakCandidate> find_peaks(const SequenceMember& m, double threshold) {
    std::vector<PeakCandidate> peaks;
    if (m.is_profile()) {
        const auto& p = m.profile();
        const double v = p.u(p.r_min());
        if (v > threshold) peaks.push_back({{p.r_min(), 0.0}, v});
        return peaks;
    }
    const auto& f = m.field();
    if (f.is_rect()) {
        const RectGrid& g = f.rect();
        for (int ix = 1; ix + 1 < g.nx; ++ix)
            for (int iy = 1; iy + 1 < g.ny; ++iy) {
                const double v = f.at(ix, iy);
                if (v <= threshold) continue;
                if (v >= f.at(ix - 1, iy) && v >= f.at(ix + 1, iy) && v >= f.at(ix, iy - 1) &&
                    v >= f.at(ix, iy + 1))
                    peaks.push_back({{g.xnode(ix), g.ynode(iy)}, v});
            }
    } else {
        const RadialGrid& g = f.radial();
        for (int j = 0; j < g.n; ++j) {
            const double v = f.at(j);
            if (v <= threshold) continue;
            if ((j == 0 || v >= f.at(j - 1)) && (j + 1 == g.n || v >= f.at(j + 1)))
                peaks.push_back({{g.node(j), 0.0}, v});
        }
    }
    return peaks;
}

} // namespace

BlowupClassification classify_sequence(const std::vector<SequenceMember>& seq,
                                       const std::vector<CompactRegion>& regions,
                                       const ClassifierThresholds& thr, const QuadratureSpec& q) {
    if (seq.size() < 4) throw InputError("classifier: need at least 4 sequence members");
    if (regions.empty()) throw InputError("classifier: need at least one tracked region");
    check_common_geometry(seq);

    const size_t n = seq.size();
    const size_t half = n / 2;

    BlowupClassification out;
    for (const CompactRegion& K : regions) {
        RegionTrace t;
        t.region = region_label(K);
        for (const SequenceMember& m : seq) {
            t.sup.push_back(m.sup(K));
            t.inf.push_back(m.inf(K));
        }
        out.diagnostics.push_back(std::move(t));
    }

    bool collapse = true;
    for (const RegionTrace& t : out.diagnostics) {
        for (size_t j = 0; j + 1 < n; ++j)
            if (t.sup[j + 1] > t.sup[j] + 1e-12) collapse = false;
        if (t.sup[n - 1] > thr.collapse_level) collapse = false;
        if (t.sup[0] - t.sup[n - 1] < thr.min_drop) collapse = false;
        if (t.sup[half] - t.sup[n - 1] < thr.half_drop) collapse = false;
    }
    if (collapse) {
        out.kind = BlowupCase::UniformCollapse;
        return out;
    }

    bool bounded = true;
    for (const RegionTrace& t : out.diagnostics) {
        double lo = t.sup[half], hi = t.sup[half];
        for (size_t j = half; j < n; ++j) {
            if (std::fabs(t.sup[j]) > thr.big || std::fabs(t.inf[j]) > thr.big) bounded = false;
            lo = std::min(lo, t.sup[j]), hi = std::max(hi, t.sup[j]);
        }
        if (hi - lo > thr.flat) bounded = false;
    }
    if (bounded) {
        out.kind = BlowupCase::Bounded;
        return out;
    }

    std::vector<PeakCandidate> cand = find_peaks(seq.back(), thr.peak);
    std::sort(cand.begin(), cand.end(), [](const PeakCandidate& a, const PeakCandidate& b) {
        if (a.value != b.value) return a.value > b.value;
        if (a.at.x != b.at.x) return a.at.x < b.at.x;
        return a.at.y < b.at.y;
    });
    std::vector<PeakCandidate> merged;
    for (const PeakCandidate& p : cand) {
        bool fresh = true;
        for (const PeakCandidate& kept : merged)
            if ((p.at - kept.at).norm() < thr.merge_radius) fresh = false;
        if (fresh) merged.push_back(p);
    }

    std::ostringstream note;
    for (const PeakCandidate& p : merged) {
        std::vector<double> m;
        for (double rho : thr.shrink_radii)
            m.push_back(seq.back().mass(CompactRegion::ball(p.at, rho), q));
        bool stable = false;
        double mass = m.back();
        for (size_t k = 1; k < m.size(); ++k)
            if (std::fabs(m[k] - m[k - 1]) <= thr.stabilization * std::max(std::fabs(m[k - 1]),
                                                                           1e-12)) {
                stable = true;
                mass = m[k];
                break;
            }
        if (stable && mass >= 4.0 * kPi - thr.mass_tol) {
            out.points.push_back(p.at);
            out.masses.push_back(mass);
        } else {
            note << "peak at (" << p.at.x << "," << p.at.y << ") dropped: "
                 << (stable ? "mass below the concentration floor" : "mass did not stabilize")
                 << "; ";
        }
    }
    if (!out.points.empty()) {
        out.kind = BlowupCase::Concentration;
        out.note = note.str();
        return out;
    }

    // No rule matched; report the nearest case, flagged.
    out.indeterminate = true;
    double last_sup = -std::numeric_limits<double>::infinity();
    for (const RegionTrace& t : out.diagnostics) last_sup = std::max(last_sup, t.sup[n - 1]);
    if (last_sup <= thr.collapse_level) out.kind = BlowupCase::UniformCollapse;
    else if (std::fabs(last_sup) <= thr.big) out.kind = BlowupCase::Bounded;
    else out.kind = BlowupCase::Concentration;
    note << "no classification rule matched; nearest case reported";
    out.note = note.str();
    return out;
}

SupInfReport supinf_statistic(const std::vector<SequenceMember>& seq, const CompactRegion& K,
                              double c1) {
    if (seq.size() < 4) throw InputError("sup+inf statistic: need at least 4 sequence members");
    SupInfReport rep;
    rep.c1 = c1;
    for (const SequenceMember& m : seq) {
        rep.index.push_back(m.index());
        rep.sup_omega.push_back(m.sup_domain());
        rep.inf_K.push_back(m.inf(K));
        rep.statistic.push_back(rep.sup_omega.back() + c1 * rep.inf_K.back());
    }
    const size_t n = rep.index.size();
    if (n > 0)
        rep.c2 = -*std::min_element(rep.statistic.begin(), rep.statistic.end());
    if (n >= 4) {
        const size_t half = n / 2;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double cnt = static_cast<double>(n - half);
        for (size_t j = half; j < n; ++j) {
            const double x = std::log(rep.index[j]);
            sx += x, sy += rep.statistic[j];
            sxx += x * x, sxy += x * rep.statistic[j];
        }
        rep.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    }
    return rep;
}

std::string csv_value(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string to_csv(const SupInfReport& rep) {
    std::string out = "# schema=supinf-v1\ni,sup_omega,inf_K,s_i\n";
    for (size_t j = 0; j < rep.index.size(); ++j) {
        out += csv_value(rep.index[j]);
        out += ',';
        out += csv_value(rep.sup_omega[j]);
        out += ',';
        out += csv_value(rep.inf_K[j]);
        out += ',';
        out += csv_value(rep.statistic[j]);
        out += '\n';
    }
    return out;
}

std::string to_text(const SupInfReport& rep) {
    std::string out = "schema=supinf-text-v1\n";
    out += "c1=" + csv_value(rep.c1) + '\n';
    out += "c2=" + csv_value(rep.c2) + '\n';
    if (rep.slope) out += "slope=" + csv_value(*rep.slope) + '\n';
    for (size_t j = 0; j < rep.index.size(); ++j) {
        out += "[i=" + csv_value(rep.index[j]) + "]\n";
        out += "sup_omega=" + csv_value(rep.sup_omega[j]) + '\n';
        out += "inf_K=" + csv_value(rep.inf_K[j]) + '\n';
        out += "s=" + csv_value(rep.statistic[j]) + '\n';
    }
    return out;
}

namespace {

std::vector<std::string_view> csv_rows(std::string_view csv, std::string_view schema) {
    std::vector<std::string_view> lines = split(csv, '\n');
    if (!lines.empty() && lines.back().empty()) lines.pop_back();
    if (lines.size() < 2 || lines[0] != std::string("# schema=") + std::string(schema))
        throw InputError("csv: missing or wrong schema line");
    lines.erase(lines.begin(), lines.begin() + 2); // schema + header
    return lines;
}

} // namespace

SupInfReport supinf_from_csv(std::string_view csv) {
    SupInfReport rep;
    for (std::string_view row : csv_rows(csv, "supinf-v1")) {
        const auto cells = split(row, ',');
        if (cells.size() != 4) throw InputError("supinf csv: expected 4 columns");
        rep.index.push_back(parse_double(cells[0]));
        rep.sup_omega.push_back(parse_double(cells[1]));
        rep.inf_K.push_back(parse_double(cells[2]));
        rep.statistic.push_back(parse_double(cells[3]));
    }
    const size_t n = rep.index.size();
    rep.c1 = 1.0;
    for (size_t j = 0; j < n; ++j)
        if (std::fabs(rep.inf_K[j]) > 1e-12) {
            rep.c1 = (rep.statistic[j] - rep.sup_omega[j]) / rep.inf_K[j];
            break;
        }
    if (n > 0)
        rep.c2 = -*std::min_element(rep.statistic.begin(), rep.statistic.end());
    if (n >= 4) {
        const size_t half = n / 2;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double cnt = static_cast<double>(n - half);
        for (size_t j = half; j < n; ++j) {
            const double x = std::log(rep.index[j]);
            sx += x, sy += rep.statistic[j];
            sxx += x * x, sxy += x * rep.statistic[j];
        }
        rep.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    }
    return rep;
}

std::string to_csv(const BlowupClassification& c) {
    std::string out = "# schema=classification-v1\ncase,x,y,alpha\n";
    if (c.points.empty()) {
        out += std::string(to_string(c.kind)) + ",,,\n";
        return out;
    }
    for (size_t j = 0; j < c.points.size(); ++j) {
        out += std::string(to_string(c.kind)) + ',';
        out += csv_value(c.points[j].x) + ',';
        out += csv_value(c.points[j].y) + ',';
        out += csv_value(c.masses[j]) + '\n';
    }
    return out;
}

std::string to_text(const BlowupClassification& c) {
    std::string out = "schema=classification-text-v1\n";
    out += "case=" + std::string(to_string(c.kind)) + '\n';
    out += "indeterminate=" + std::string(c.indeterminate ? "1" : "0") + '\n';
    if (!c.note.empty()) out += "note=" + c.note + '\n';
    for (size_t j = 0; j < c.points.size(); ++j) {
        out += "[point " + csv_value(static_cast<double>(j)) + "]\n";
        out += "x=" + csv_value(c.points[j].x) + '\n';
        out += "y=" + csv_value(c.points[j].y) + '\n';
        out += "alpha=" + csv_value(c.masses[j]) + '\n';
    }
    for (const RegionTrace& t : c.diagnostics) {
        out += "[region " + t.region + "]\n";
        out += "sup=";
        for (size_t j = 0; j < t.sup.size(); ++j) out += (j ? "," : "") + csv_value(t.sup[j]);
        out += "\ninf=";
        for (size_t j = 0; j < t.inf.size(); ++j) out += (j ? "," : "") + csv_value(t.inf[j]);
        out += '\n';
    }
    return out;
}

BlowupClassification classification_from_csv(std::string_view csv) {
    BlowupClassification out;
    const auto rows = csv_rows(csv, "classification-v1");
    if (rows.empty()) throw InputError("classification csv: no data rows");
    for (std::string_view row : rows) {
        const auto cells = split(row, ',');
        if (cells.size() != 4) throw InputError("classification csv: expected 4 columns");
        out.kind = blowup_case_from(cells[0]);
        if (cells[1].empty()) continue;
        out.points.push_back({parse_double(cells[1]), parse_double(cells[2])});
        out.masses.push_back(parse_double(cells[3]));
    }
    return out;
}

} // namespace liouville::analysis
