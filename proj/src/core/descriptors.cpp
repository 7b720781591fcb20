#include "core/descriptors.hpp"

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <string>

#include "core/sampled_field.hpp"

namespace liouville::descriptors {

namespace {

double parse_number(std::string_view s, std::string_view what) {
    const std::string owned(s);
    char* end = nullptr;
    const double v = std::strtod(owned.c_str(), &end);
    if (end == owned.c_str() || *end != '\0')
        throw InputError(std::string(what) + ": malformed number '" + owned + "'");
    return v;
}

// Splits "head:rest" at the first colon; rest is empty when absent.
std::pair<std::string_view, std::string_view> head_rest(std::string_view desc) {
    const size_t colon = desc.find(':');
    if (colon == std::string_view::npos) return {desc, {}};
    return {desc.substr(0, colon), desc.substr(colon + 1)};
}

} // namespace

green::Density parse_density(std::string_view desc) {
    const auto [head, rest] = head_rest(desc);
    if (head == "const") return green::Density::constant(parse_number(rest, "density"));
    if (head == "profile") {
        const families::RadialProfile p = families::RadialProfile::parse(rest);
        return {[p](Vec2 y) {
                    const double r = std::clamp(y.norm(), p.r_min(), p.r_max());
                    return p.weight(r) * std::exp(p.u(r));
                },
                std::nullopt};
    }
    if (head == "field") {
        auto f = std::make_shared<fields::SampledField>(
            fields::SampledField::load(std::string(rest)));
        return {[f](Vec2 y) { return f->eval(y); }, std::nullopt};
    }
    throw InputError("unknown density descriptor: " + std::string(desc));
}

green::BoundaryTrace parse_trace(std::string_view desc) {
    const auto [head, rest] = head_rest(desc);
    if (head == "const") return green::BoundaryTrace::constant(parse_number(rest, "trace"));
    if (head == "x1" && rest.empty()) return {[](Vec2 s) { return s.x; }};
    if (head == "profile") {
        const families::RadialProfile p = families::RadialProfile::parse(rest);
        return {[p](Vec2 s) {
            return p.u(std::clamp(s.norm(), p.r_min(), p.r_max()));
        }};
    }
    throw InputError("unknown trace descriptor: " + std::string(desc));
}

families::RadialWeight parse_weight(std::string_view desc) {
    const auto [head, rest] = head_rest(desc);
    if (head == "const") return families::RadialWeight::constant(parse_number(rest, "weight"));
    if (head == "profile")
        return families::RadialWeight::of_profile(families::RadialProfile::parse(rest));
    throw InputError("unknown weight descriptor: " + std::string(desc));
}

std::function<double(double)> parse_eps(std::string_view desc) {
    const auto [head, rest] = head_rest(desc);
    if (head == "const") {
        const double c = parse_number(rest, "eps");
        if (c < 0.0) throw InputError("eps must be nonnegative");
        return [c](double) { return c; };
    }
    if (head == "bubble") {
        const families::RadialProfile p(families::Family::StandardBubble,
                                        parse_number(rest, "eps"));
        return [p](double r) {
            const double d = p.du(std::clamp(r, p.r_min(), p.r_max()));
            return 1.0 + d * d;
        };
    }
    throw InputError("unknown eps descriptor: " + std::string(desc));
}

} // namespace liouville::descriptors
