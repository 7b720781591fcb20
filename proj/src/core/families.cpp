#include "core/families.hpp"

#include <cassert>
#include <charconv>
#include <cmath>

#include "core/quadrature.hpp"

namespace liouville::families {

namespace {

constexpr double kPi = 3.14159265358979323846;

// log(1 + r^p) without overflowing r^p.
double log1p_pow(double r, double p) {
    if (r <= 0.0) return 0.0;
    const double e = p * std::log(r);
    if (e > 36.0) return e + std::log1p(std::exp(-e)); // r^p >> 1
    return std::log1p(std::exp(e));
}

// r^(p-1) / (1 + r^p), stable for all magnitudes of r^p.
double ratio_pow(double r, double p) {
    if (r <= 0.0) return 0.0;
    const double lr = std::log(r);
    return std::exp((p - 1.0) * lr - log1p_pow(r, p));
}

// r^p / (1 + r^p)^2
double bump_pow(double r, double p) {
    if (r <= 0.0) return 0.0;
    const double lr = std::log(r);
    return std::exp(p * lr - 2.0 * log1p_pow(r, p));
}

// 1 / (1 + r^p)
double inv_one_plus_pow(double r, double p) { return std::exp(-log1p_pow(r, p)); }

// Unscaled Shafrir profile pieces (joint at r = 1).
double shafrir_u(double r, double b) {
    if (r <= 1.0) return 2.0 * std::log(b) + 2.0 * std::log(2.0) - 2.0 * std::log1p(r * r);
    return 2.0 * std::log(2.0 * b) + 2.0 * (b - 1.0) * std::log(r) - 2.0 * log1p_pow(r, 2.0 * b);
}

double shafrir_du(double r, double b) {
    if (r <= 1.0) return -4.0 * r / (1.0 + r * r);
    return 2.0 * (b - 1.0) / r - 4.0 * b * ratio_pow(r, 2.0 * b);
}

double shafrir_d2u(double r, double b) {
    if (r <= 1.0) {
        const double q = 1.0 + r * r;
        return -4.0 * (1.0 - r * r) / (q * q);
    }
    const double s1 = bump_pow(r, 2.0 * b);
    const double s2 = ratio_pow(r, 2.0 * b);
    return -2.0 * (b - 1.0) / (r * r) - 4.0 * b * ((2.0 * b - 1.0) * s1 / (r * r) - s2 * s2);
}

double shafrir_weight(double r, double b) { return r <= 1.0 ? 2.0 / (b * b) : 2.0; }

// integral of e^u over B_s for the unscaled Shafrir profile
double shafrir_mass(double s, double b) {
    const double si = std::min(s, 1.0);
    double m = 4.0 * kPi * b * b * si * si / (1.0 + si * si);
    if (s > 1.0) m += 4.0 * kPi * b * (0.5 - inv_one_plus_pow(s, 2.0 * b));
    return m;
}

double parse_number(std::string_view tok, const char* what) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
        throw InputError(std::string("profile descriptor: bad ") + what + " '" + std::string(tok) +
                         "'");
    return v;
}

std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace

RadialProfile::RadialProfile(Family family, double index, double beta, bool remark_literal)
    : family_(family), index_(index), beta_(beta), literal_(remark_literal) {
    if (!(index > 0.0)) throw DomainError("profile: index must be positive");
    if (literal_ && family_ != Family::RemarkBubble)
        throw DomainError("profile: literal variant exists only for the remark family");
    switch (family_) {
    case Family::StandardBubble:
    case Family::RemarkBubble:
        r_min_ = 0.0;
        r_max_ = 1.0;
        break;
    case Family::ShafrirPiecewise:
        if (!(beta >= 1.0)) throw DomainError("profile: beta must be >= 1");
        r_min_ = 0.0;
        r_max_ = 4.0;
        joints_ = {1.0};
        break;
    case Family::ShafrirScaled:
        if (!(beta >= 1.0)) throw DomainError("profile: beta must be >= 1");
        r_min_ = 0.0;
        r_max_ = 1.0;
        if (1.0 / index < r_max_) joints_ = {1.0 / index};
        break;
    case Family::AnnulusFamily:
        r_min_ = 1.0;
        r_max_ = 2.0;
        break;
    }
}

RadialProfile RadialProfile::parse(std::string_view d) {
    std::vector<std::string_view> parts;
    size_t start = 0;
    while (true) {
        const size_t pos = d.find(':', start);
        parts.push_back(d.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (parts.empty() || parts[0].empty()) throw InputError("profile descriptor: empty family");
    const std::string_view fam = parts[0];
    const auto arg = [&](size_t k, const char* what) {
        if (parts.size() <= k) throw InputError(std::string("profile descriptor: missing ") + what);
        return parse_number(parts[k], what);
    };
    const auto expect_args = [&](size_t n) {
        if (parts.size() != n + 1)
            throw InputError("profile descriptor: wrong number of parameters for '" +
                             std::string(fam) + "'");
    };
    if (fam == "bubble") {
        expect_args(1);
        return RadialProfile(Family::StandardBubble, arg(1, "index"));
    }
    if (fam == "remark") {
        expect_args(1);
        return RadialProfile(Family::RemarkBubble, arg(1, "index"));
    }
    if (fam == "remark-literal") {
        expect_args(1);
        return RadialProfile(Family::RemarkBubble, arg(1, "index"), 1.0, true);
    }
    if (fam == "shafrir-piecewise") {
        expect_args(1);
        return RadialProfile(Family::ShafrirPiecewise, 1.0, arg(1, "beta"));
    }
    if (fam == "shafrir-scaled") {
        expect_args(2);
        return RadialProfile(Family::ShafrirScaled, arg(1, "index"), arg(2, "beta"));
    }
    if (fam == "annulus") {
        expect_args(1);
        return RadialProfile(Family::AnnulusFamily, arg(1, "index"));
    }
    throw InputError("profile descriptor: unknown family '" + std::string(fam) + "'");
}

std::string RadialProfile::descriptor() const {
    switch (family_) {
    case Family::StandardBubble: return "bubble:" + format_number(index_);
    case Family::RemarkBubble:
        return (literal_ ? "remark-literal:" : "remark:") + format_number(index_);
    case Family::ShafrirPiecewise: return "shafrir-piecewise:" + format_number(beta_);
    case Family::ShafrirScaled:
        return "shafrir-scaled:" + format_number(index_) + ":" + format_number(beta_);
    case Family::AnnulusFamily: return "annulus:" + format_number(index_);
    }
    return {};
}

void RadialProfile::check_radius(double r) const {
    if (!(r >= r_min_ && r <= r_max_))
        throw DomainError("profile: radius " + format_number(r) + " outside [" +
                          format_number(r_min_) + ", " + format_number(r_max_) + "]");
}

double RadialProfile::u(double r) const {
    check_radius(r);
    const double i = index_;
    switch (family_) {
    case Family::StandardBubble: return std::log(8.0 * i * i) - 2.0 * std::log1p(i * i * r * r);
    case Family::RemarkBubble: {
        const double q = i * i + r * r;
        return (literal_ ? 0.0 : std::log(8.0 * i * i)) - 2.0 * std::log(q);
    }
    case Family::ShafrirPiecewise: return shafrir_u(r, beta_);
    case Family::ShafrirScaled: return shafrir_u(i * r, beta_) + 2.0 * std::log(i);
    case Family::AnnulusFamily:
        return 2.0 * std::log(2.0 * i) + 2.0 * (i - 1.0) * std::log(r) - 2.0 * log1p_pow(r, 2.0 * i);
    }
    return 0.0;
}

double RadialProfile::du(double r) const {
    check_radius(r);
    const double i = index_;
    switch (family_) {
    case Family::StandardBubble: return -4.0 * i * i * r / (1.0 + i * i * r * r);
    case Family::RemarkBubble: return -4.0 * r / (i * i + r * r);
    case Family::ShafrirPiecewise: return shafrir_du(r, beta_);
    case Family::ShafrirScaled: return i * shafrir_du(i * r, beta_);
    case Family::AnnulusFamily: return 2.0 * (i - 1.0) / r - 4.0 * i * ratio_pow(r, 2.0 * i);
    }
    return 0.0;
}

double RadialProfile::d2u(double r) const {
    check_radius(r);
    const double i = index_;
    switch (family_) {
    case Family::StandardBubble: {
        const double q = 1.0 + i * i * r * r;
        return -4.0 * i * i * (1.0 - i * i * r * r) / (q * q);
    }
    case Family::RemarkBubble: {
        const double q = i * i + r * r;
        return -4.0 * (i * i - r * r) / (q * q);
    }
    case Family::ShafrirPiecewise: return shafrir_d2u(r, beta_);
    case Family::ShafrirScaled: return i * i * shafrir_d2u(i * r, beta_);
    case Family::AnnulusFamily: {
        const double s1 = bump_pow(r, 2.0 * i);
        const double s2 = ratio_pow(r, 2.0 * i);
        return -2.0 * (i - 1.0) / (r * r) -
               4.0 * i * ((2.0 * i - 1.0) * s1 / (r * r) - s2 * s2);
    }
    }
    return 0.0;
}

double RadialProfile::weight(double r) const {
    check_radius(r);
    switch (family_) {
    case Family::StandardBubble: return 1.0;
    case Family::RemarkBubble: return literal_ ? 8.0 * index_ * index_ : 1.0;
    case Family::ShafrirPiecewise: return shafrir_weight(r, beta_);
    case Family::ShafrirScaled: return shafrir_weight(index_ * r, beta_);
    case Family::AnnulusFamily: return 2.0;
    }
    return 0.0;
}

double RadialProfile::residual(double r) const {
    check_radius(r);
    for (double j : joints_)
        if (std::fabs(r - j) < kJointMargin)
            throw DomainError("profile: residual is one-sided at the joint; evaluate at least "
                              "1e-9 away from r = " +
                              format_number(j));
    const double lap = r == r_min_ && r_min_ == 0.0 ? 2.0 * d2u(r) : d2u(r) + du(r) / r;
    return -lap - weight(r) * std::exp(u(r));
}

double RadialProfile::mass(double R) const {
    if (!(R > r_min_ && R <= r_max_))
        throw DomainError("profile: mass radius outside (r_min, r_max]");
    const double i = index_;
    switch (family_) {
    case Family::StandardBubble:
        return 8.0 * kPi * i * i * R * R / (1.0 + i * i * R * R);
    case Family::RemarkBubble:
        if (literal_) return kPi * R * R / (i * i * (i * i + R * R));
        return 8.0 * kPi * R * R / (i * i + R * R);
    case Family::ShafrirPiecewise: return shafrir_mass(R, beta_);
    case Family::ShafrirScaled: return shafrir_mass(i * R, beta_);
    case Family::AnnulusFamily:
        return 4.0 * kPi * i * (0.5 - inv_one_plus_pow(R, 2.0 * i));
    }
    return 0.0;
}

double RadialProfile::mass_quadrature(double R) const {
    if (!(R > r_min_ && R <= r_max_))
        throw DomainError("profile: mass radius outside (r_min, r_max]");
    return 2.0 * kPi *
           quadrature::adaptive([this](double r) { return std::exp(u(r)) * r; }, r_min_, R,
                                joints_);
}

double RadialProfile::weight_bound() const {
    double b = 0.0;
    switch (family_) {
    case Family::StandardBubble: return 1.0;
    case Family::RemarkBubble: return literal_ ? 8.0 * index_ * index_ : 1.0;
    case Family::ShafrirPiecewise:
    case Family::ShafrirScaled: b = std::max(2.0, 2.0 / (beta_ * beta_)); return b;
    case Family::AnnulusFamily: return 2.0;
    }
    return b;
}

RadialWeight RadialWeight::constant(double c) {
    if (!(c >= 0.0)) throw DomainError("weight: values must be nonnegative");
    return {[c](double) { return c; }, {}, c};
}

RadialWeight RadialWeight::of_profile(const RadialProfile& p) {
    RadialProfile copy = p;
    return {[copy](double r) { return copy.weight(r); }, p.joints(), p.weight_bound()};
}

} // namespace liouville::families
