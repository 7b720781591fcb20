#pragma once

#include <functional>
#include <string_view>

#include "core/families.hpp"
#include "core/green_disk.hpp"

namespace liouville::descriptors {

// Small string grammars shared by the C surface and the scenario configs.
// Unknown shapes raise InputError with the offending descriptor.

// Interior density: "const:<c>" | "profile:<family-desc>" (V e^u of the
// profile, radius clamped into its domain) | "field:<path>" (sampled field
// loaded from disk, evaluated by interpolation).
green::Density parse_density(std::string_view desc);

// Boundary trace: "const:<c>" | "x1" (first coordinate) |
// "profile:<family-desc>" (trace of u at the evaluation radius).
green::BoundaryTrace parse_trace(std::string_view desc);

// Radial weight for the solvers: "const:<c>" | "profile:<family-desc>" (the
// profile's own V with its breakpoints).
families::RadialWeight parse_weight(std::string_view desc);

// Coercive coefficient: "const:<c>" | "bubble:<i>" (1 + u_i'(r)^2 from the
// closed-form bubble, clamped into its domain).
std::function<double(double)> parse_eps(std::string_view desc);

} // namespace liouville::descriptors
