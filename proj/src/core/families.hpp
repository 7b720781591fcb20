#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/errors.hpp"

namespace liouville::families {

// Closed-form radial solution families of -lap(u) = V e^u.
//
//   StandardBubble(i):   u = log(8 i^2 / (1 + i^2 r^2)^2),        V = 1
//   RemarkBubble(mu):    u = log(8 mu^2 / (mu^2 + r^2)^2),        V = 1
//     literal variant:   u = log(1 / (mu^2 + r^2)^2),             V = 8 mu^2
//   ShafrirPiecewise(b): u = 2 log(2b) + 2 log(1/(1+r^2)) + ...   V = 2/b^2 (r<=1), 2 (r>1)
//   ShafrirScaled(i,b):  u_i(r) = u(i r) + 2 log i,               V = 2/b^2 (r<=1/i), 2 (r>1/i)
//   AnnulusFamily(i):    u = 2 log(2 i r^(i-1) / (1 + r^(2i))) on [1,2],  V = 2
//
// All families are strictly decreasing in r on their domain, which the
// extremum functionals rely on.  Piecewise families are C^1 across the joint;
// V and u'' jump there.  Joints belong to the inner branch.
enum class Family {
    StandardBubble,
    RemarkBubble,
    ShafrirPiecewise,
    ShafrirScaled,
    AnnulusFamily,
};

class RadialProfile {
public:
    // `index` is the blow-up parameter (i or mu); `beta` only matters for the
    // Shafrir families.  `remark_literal` selects the un-normalized
    // RemarkBubble variant whose weight is the constant 8 mu^2.
    RadialProfile(Family family, double index, double beta = 1.0, bool remark_literal = false);

    // Descriptor grammar: family:index[:beta], families named
    // bubble | remark | remark-literal | shafrir-piecewise | shafrir-scaled | annulus.
    // shafrir-piecewise takes a single parameter, its beta: "shafrir-piecewise:1.5".
    static RadialProfile parse(std::string_view descriptor);
    std::string descriptor() const;

    Family family() const { return family_; }
    double index() const { return index_; }
    double beta() const { return beta_; }
    bool remark_literal() const { return literal_; }

    double r_min() const { return r_min_; }
    double r_max() const { return r_max_; }
    // Branch joints interior to the domain (at most one).
    const std::vector<double>& joints() const { return joints_; }

    double u(double r) const;
    double du(double r) const;
    double d2u(double r) const;
    double weight(double r) const; // V; joints evaluate on the inner branch

    // -(u'' + u'/r) - V e^u from the analytic derivatives; 0 up to rounding.
    // At r = 0 the radial Laplacian limit 2 u''(0) is used.  Within 1e-9 of a
    // joint the second derivative is one-sided only, so this raises
    // DomainError directing the caller to evaluate a margin away.
    double residual(double r) const;

    // integral of e^u over B_R (annulus: over 1 <= |x| <= R), closed form.
    double mass(double R) const;
    // Same integral by adaptive quadrature split at the joints.
    double mass_quadrature(double R) const;

    // Supremum of V over the domain; feeds RadialWeight::bound.
    double weight_bound() const;

private:
    void check_radius(double r) const;

    Family family_;
    double index_;
    double beta_;
    bool literal_;
    double r_min_, r_max_;
    std::vector<double> joints_;
};

// Margin around piecewise joints inside which one-sided quantities refuse to
// evaluate.
inline constexpr double kJointMargin = 1e-9;

// Piecewise-constant-or-smooth radial weight with known discontinuity
// locations and a finite upper bound: the V the solvers integrate against.
struct RadialWeight {
    std::function<double(double)> eval;
    std::vector<double> breakpoints;
    double bound = 0.0;

    static RadialWeight constant(double c);
    static RadialWeight of_profile(const RadialProfile& p);
};

} // namespace liouville::families
