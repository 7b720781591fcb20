#pragma once

#include <stdexcept>
#include <string>

namespace liouville {

// Base for every failure the library reports deliberately.  Each subclass
// corresponds to one status code of the C API.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Argument outside the documented domain (point outside the disk, radius out
// of range, evaluation exactly on a piecewise joint, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation at a non-integrable point (e.g. Green function on its diagonal).
class SingularityError : public Error {
public:
    using Error::Error;
};

// A quadrature or iteration could not reach the requested tolerance.  Carries
// the best value obtained and the error estimate actually achieved.
class ToleranceError : public Error {
public:
    ToleranceError(const std::string& what, double best, double achieved)
        : Error(what), best_value(best), achieved_estimate(achieved) {}
    double best_value;
    double achieved_estimate;
};

// Root bracketing failed: the requested boundary value has no solution on the
// searched branch.
class NoSolutionError : public Error {
public:
    using Error::Error;
};

// The integrated solution left the representable range (u > overflow guard).
class BlowupError : public Error {
public:
    BlowupError(const std::string& what, double last_r)
        : Error(what), last_valid_radius(last_r) {}
    double last_valid_radius;
};

// Malformed descriptor, config file, or scenario invocation.
class InputError : public Error {
public:
    using Error::Error;
};

// Filesystem failure while reading or writing fields and reports.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace liouville
