#include "core/sampled_field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace liouville::fields {

namespace {

double parse_value(const std::string& tok, const std::string& where) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw InputError("field file: malformed number in " + where + ": '" + tok + "'");
    return v;
}

} // namespace

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SampledField SampledField::on_rect(const RectGrid& g, std::vector<double> values) {
    if (values.size() != static_cast<size_t>(g.nx) * g.ny)
        throw DomainError("field: value count does not match the rect grid");
    SampledField f;
    f.grid_ = g;
    f.values_ = std::move(values);
    return f;
}

SampledField SampledField::on_radial(const RadialGrid& g, std::vector<double> values) {
    if (values.size() != static_cast<size_t>(g.n))
        throw DomainError("field: value count does not match the radial grid");
    SampledField f;
    f.grid_ = g;
    f.values_ = std::move(values);
    return f;
}

SampledField SampledField::sample_rect(const RectGrid& g, const std::function<double(Vec2)>& fn) {
    std::vector<double> v(static_cast<size_t>(g.nx) * g.ny);
    for (int ix = 0; ix < g.nx; ++ix)
        for (int iy = 0; iy < g.ny; ++iy)
            v[static_cast<size_t>(ix) * g.ny + iy] = fn({g.xnode(ix), g.ynode(iy)});
    return on_rect(g, std::move(v));
}

SampledField SampledField::sample_radial(const RadialGrid& g,
                                         const std::function<double(double)>& fn) {
    std::vector<double> v(g.n);
    for (int j = 0; j < g.n; ++j) v[j] = fn(g.node(j));
    return on_radial(g, std::move(v));
}

const RectGrid& SampledField::rect() const {
    if (!is_rect()) throw DomainError("field: not a rect field");
    return std::get<RectGrid>(grid_);
}

const RadialGrid& SampledField::radial() const {
    if (is_rect()) throw DomainError("field: not a radial field");
    return std::get<RadialGrid>(grid_);
}

double SampledField::at(int ix, int iy) const {
    const RectGrid& g = rect();
    if (ix < 0 || ix >= g.nx || iy < 0 || iy >= g.ny)
        throw DomainError("field: node index out of range");
    return values_[static_cast<size_t>(ix) * g.ny + iy];
}

double SampledField::at(int j) const {
    const RadialGrid& g = radial();
    if (j < 0 || j >= g.n) throw DomainError("field: node index out of range");
    return values_[j];
}

double SampledField::eval(Vec2 p) const {
    if (!is_rect()) return eval_radial(p.norm());
    const RectGrid& g = std::get<RectGrid>(grid_);
    const double tol = 1e-12 * (std::fabs(g.x1 - g.x0) + std::fabs(g.y1 - g.y0));
    if (p.x < g.x0 - tol || p.x > g.x1 + tol || p.y < g.y0 - tol || p.y > g.y1 + tol)
        throw DomainError("field: evaluation point outside the grid");
    const double fx = std::clamp((p.x - g.x0) / g.hx(), 0.0, g.nx - 1.0);
    const double fy = std::clamp((p.y - g.y0) / g.hy(), 0.0, g.ny - 1.0);
    const int ix = std::min(static_cast<int>(fx), g.nx - 2);
    const int iy = std::min(static_cast<int>(fy), g.ny - 2);
    const double tx = fx - ix, ty = fy - iy;
    return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) +
           (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

double SampledField::eval_radial(double r) const {
    const RadialGrid& g = radial();
    const double tol = 1e-12 * (g.r_max - g.r_min);
    if (r < g.r_min - tol || r > g.r_max + tol)
        throw DomainError("field: radius outside the grid");
    const double f = std::clamp((r - g.r_min) / g.spacing(), 0.0, g.n - 1.0);
    const int j = std::min(static_cast<int>(f), g.n - 2);
    const double t = f - j;
    return (1 - t) * values_[j] + t * values_[j + 1];
}

void SampledField::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("field: cannot open '" + path + "' for writing");
    if (is_rect()) {
        const RectGrid& g = std::get<RectGrid>(grid_);
        out << "geometry=rect\n";
        out << "x_min=" << format_value(g.x0) << "\nx_max=" << format_value(g.x1) << "\n";
        out << "y_min=" << format_value(g.y0) << "\ny_max=" << format_value(g.y1) << "\n";
        out << "nx=" << g.nx << "\nny=" << g.ny << "\n";
    } else {
        const RadialGrid& g = std::get<RadialGrid>(grid_);
        out << "geometry=radial\n";
        out << "r_min=" << format_value(g.r_min) << "\nr_max=" << format_value(g.r_max) << "\n";
        out << "n=" << g.n << "\n";
    }
    if (!metadata_.empty()) out << "metadata=" << metadata_ << "\n";
    for (double v : values_) out << format_value(v) << "\n";
    if (!out) throw IoError("field: write to '" + path + "' failed");
}

SampledField SampledField::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("field: cannot open '" + path + "' for reading");
    std::map<std::string, std::string> header;
    std::vector<double> values;
    std::string line;
    bool in_values = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        // header lines are key=value with an alphabetic key; values are bare numbers
        if (!in_values && eq != std::string::npos && std::isalpha(line.front())) {
            header[line.substr(0, eq)] = line.substr(eq + 1);
            continue;
        }
        in_values = true;
        values.push_back(parse_value(line, "value block"));
    }
    const auto need = [&](const char* key) {
        const auto it = header.find(key);
        if (it == header.end()) throw InputError(std::string("field file: missing header ") + key);
        return it->second;
    };
    const auto geom = need("geometry");
    SampledField f;
    if (geom == "rect") {
        const RectGrid g(parse_value(need("x_min"), "header"), parse_value(need("x_max"), "header"),
                         parse_value(need("y_min"), "header"), parse_value(need("y_max"), "header"),
                         static_cast<int>(parse_value(need("nx"), "header")),
                         static_cast<int>(parse_value(need("ny"), "header")));
        f = on_rect(g, std::move(values));
    } else if (geom == "radial") {
        const double rmin = header.count("r_min") ? parse_value(header["r_min"], "header") : 0.0;
        const RadialGrid g(rmin, parse_value(need("r_max"), "header"),
                           static_cast<int>(parse_value(need("n"), "header")));
        f = on_radial(g, std::move(values));
    } else {
        throw InputError("field file: unknown geometry '" + geom + "'");
    }
    if (header.count("metadata")) f.metadata_ = header["metadata"];
    return f;
}

} // namespace liouville::fields
