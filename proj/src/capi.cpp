#include "liouville/liouville.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "core/descriptors.hpp"
#include "core/errors.hpp"
#include "core/experiments.hpp"
#include "core/families.hpp"
#include "core/green_disk.hpp"
#include "core/pde_solver.hpp"
#include "core/sampled_field.hpp"

using namespace liouville;

struct llab_profile {
    families::RadialProfile p;
};
struct llab_green {
    green::GreenKernel k;
};
struct llab_field {
    fields::SampledField f;
};

namespace {

thread_local std::string t_error;

template <typename F>
llab_status wrap(F&& body) noexcept {
    t_error.clear();
    try {
        body();
        return LLAB_OK;
    } catch (const ToleranceError& e) {
        t_error = e.what();
        return LLAB_TOLERANCE;
    } catch (const BlowupError& e) {
        t_error = e.what();
        return LLAB_BLOWUP;
    } catch (const SingularityError& e) {
        t_error = e.what();
        return LLAB_SINGULARITY;
    } catch (const DomainError& e) {
        t_error = e.what();
        return LLAB_DOMAIN;
    } catch (const NoSolutionError& e) {
        t_error = e.what();
        return LLAB_NO_SOLUTION;
    } catch (const InputError& e) {
        t_error = e.what();
        return LLAB_INPUT;
    } catch (const IoError& e) {
        t_error = e.what();
        return LLAB_IO;
    } catch (const std::exception& e) {
        t_error = e.what();
        return LLAB_INTERNAL;
    } catch (...) {
        t_error = "unknown failure";
        return LLAB_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) throw InputError(std::string("null ") + what);
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* llab_last_error(void) { return t_error.c_str(); }

void llab_string_free(char* s) { std::free(s); }

llab_status llab_profile_create(const char* descriptor, llab_profile** out) {
    return wrap([&] {
        require(descriptor, "descriptor");
        require(out, "out handle");
        *out = new llab_profile{families::RadialProfile::parse(descriptor)};
    });
}

void llab_profile_free(llab_profile* p) { delete p; }

llab_status llab_profile_eval(const llab_profile* p, double r, double* u, double* du,
                              double* d2u) {
    return wrap([&] {
        require(p, "profile");
        const double vu = u ? p->p.u(r) : 0.0;
        const double vdu = du ? p->p.du(r) : 0.0;
        const double vd2u = d2u ? p->p.d2u(r) : 0.0;
        if (u) *u = vu;
        if (du) *du = vdu;
        if (d2u) *d2u = vd2u;
    });
}

llab_status llab_profile_residual(const llab_profile* p, double r, double* out) {
    return wrap([&] {
        require(p, "profile");
        require(out, "out value");
        *out = p->p.residual(r);
    });
}

llab_status llab_profile_mass(const llab_profile* p, double R, double* out) {
    return wrap([&] {
        require(p, "profile");
        require(out, "out value");
        *out = p->p.mass(R);
    });
}

llab_status llab_green_create(double center_x, double center_y, double radius, llab_green** out) {
    return wrap([&] {
        require(out, "out handle");
        if (!(radius > 0.0)) throw InputError("green kernel: radius must be positive");
        *out = new llab_green{green::GreenKernel(green::Disk{{center_x, center_y}, radius})};
    });
}

void llab_green_free(llab_green* g) { delete g; }

llab_status llab_green_eval(const llab_green* g, double x0, double x1, double y0, double y1,
                            double* out) {
    return wrap([&] {
        require(g, "green kernel");
        require(out, "out value");
        *out = g->k.green({x0, x1}, {y0, y1});
    });
}

llab_status llab_green_represent(const llab_green* g, const char* density, const char* trace,
                                 double x0, double x1, double* out) {
    return wrap([&] {
        require(g, "green kernel");
        require(density, "density descriptor");
        require(trace, "trace descriptor");
        require(out, "out value");
        *out = g->k.represent(descriptors::parse_density(density), descriptors::parse_trace(trace),
                              {x0, x1});
    });
}

llab_status llab_field_load(const char* path, llab_field** out) {
    return wrap([&] {
        require(path, "path");
        require(out, "out handle");
        *out = new llab_field{fields::SampledField::load(path)};
    });
}

llab_status llab_field_save(const llab_field* f, const char* path) {
    return wrap([&] {
        require(f, "field");
        require(path, "path");
        f->f.save(path);
    });
}

void llab_field_free(llab_field* f) { delete f; }

llab_status llab_field_eval(const llab_field* f, double x0, double x1, double* out) {
    return wrap([&] {
        require(f, "field");
        require(out, "out value");
        *out = f->f.is_rect() ? f->f.eval({x0, x1}) : f->f.eval_radial(std::hypot(x0, x1));
    });
}

llab_status llab_solve_radial_ivp(double u0, const char* weight, double r_max, int n,
                                  llab_field** out) {
    return wrap([&] {
        require(weight, "weight descriptor");
        require(out, "out handle");
        solver::SolveReport rep =
            solver::solve_radial_ivp(u0, descriptors::parse_weight(weight), RadialGrid(0.0, r_max, n));
        *out = new llab_field{std::move(rep.solution)};
    });
}

llab_status llab_solve_radial_bvp(double boundary_value, const char* weight, int high_branch,
                                  double r_max, int n, double* u0, llab_field** out) {
    return wrap([&] {
        require(weight, "weight descriptor");
        solver::SolveReport rep = solver::solve_radial_bvp(
            boundary_value, descriptors::parse_weight(weight),
            high_branch ? solver::Branch::High : solver::Branch::Low, RadialGrid(0.0, r_max, n));
        if (u0) *u0 = rep.u0;
        if (out) *out = new llab_field{std::move(rep.solution)};
    });
}

llab_status llab_green_coercive(const char* eps, double r_eval, int n, double* out) {
    return wrap([&] {
        require(eps, "eps descriptor");
        require(out, "out value");
        *out = solver::green_coercive_radial(descriptors::parse_eps(eps), r_eval,
                                             RadialGrid(0.0, 1.0, n));
    });
}

llab_status llab_build_two_bubble(double m_tilde, int nx, llab_field** out) {
    return wrap([&] {
        require(out, "out handle");
        const RectGrid grid(-1.05, 1.05, -1.05, 1.05, nx, nx);
        *out = new llab_field{
            experiments::build_two_bubble(experiments::TwoBubbleSpec::from_level(m_tilde), grid)};
    });
}

llab_status llab_scenario_names(char** out) {
    return wrap([&] {
        require(out, "out string");
        std::string joined;
        for (const std::string& name : experiments::scenario_names()) {
            if (!joined.empty()) joined += '\n';
            joined += name;
        }
        *out = dup_string(joined);
    });
}

llab_status llab_run_scenario(const char* scenario, const char* config_path, const char* out_dir,
                              const char* format, int* claims_hold, char** violations) {
    return wrap([&] {
        require(scenario, "scenario name");
        require(claims_hold, "claims_hold");
        experiments::ScenarioConfig cfg =
            config_path ? experiments::ScenarioConfig::from_file(scenario, config_path)
                        : experiments::ScenarioConfig::defaults(scenario);
        if (out_dir) cfg.out_dir = out_dir;
        if (format) cfg.apply("format", format);
        const experiments::ScenarioResult res = experiments::run(cfg);
        std::string joined;
        for (const std::string& v : res.violations) {
            if (!joined.empty()) joined += '\n';
            joined += v;
        }
        *claims_hold = res.claims_hold ? 1 : 0;
        if (violations) *violations = dup_string(joined);
    });
}

} // extern "C"
