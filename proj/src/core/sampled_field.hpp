#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "core/geometry.hpp"

namespace liouville::fields {

// Scalar samples over a RectGrid (bilinear interpolation, values stored
// x-major: index ix*ny + iy) or a RadialGrid (linear interpolation in r).
//
// File format, line oriented:
//   geometry=rect|radial
//   rect:   x_min= x_max= y_min= y_max= nx= ny=
//   radial: r_min= r_max= n=
//   metadata=<free-form, optional>
//   followed by one value per line in storage order, >= 15 significant digits.
class SampledField {
public:
    static SampledField on_rect(const RectGrid& g, std::vector<double> values);
    static SampledField on_radial(const RadialGrid& g, std::vector<double> values);
    static SampledField sample_rect(const RectGrid& g, const std::function<double(Vec2)>& f);
    static SampledField sample_radial(const RadialGrid& g, const std::function<double(double)>& f);

    bool is_rect() const { return std::holds_alternative<RectGrid>(grid_); }
    const RectGrid& rect() const;
    const RadialGrid& radial() const;

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    double at(int ix, int iy) const;
    double at(int j) const;

    // Interpolated evaluation; DomainError outside the grid.
    double eval(Vec2 p) const;
    double eval_radial(double r) const;

    const std::string& metadata() const { return metadata_; }
    void set_metadata(std::string m) { metadata_ = std::move(m); }

    void save(const std::string& path) const;
    static SampledField load(const std::string& path);

private:
    SampledField() = default;
    std::variant<RectGrid, RadialGrid> grid_;
    std::vector<double> values_;
    std::string metadata_;
};

// 17-significant-digit decimal text; round-trips exactly through strtod.
std::string format_value(double v);

} // namespace liouville::fields
