#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// wavelength/parameter outside a model or transparency window
struct range_error : error {
    using error::error;
};

// branch/class/plane combination that does not exist
struct geometry_error : error {
    using error::error;
};

// registry schema or invariant breach
struct validation_error : error {
    using error::error;
};

// solver found no bracketing sign change; carries the residual extrema
struct no_solution_error : error {
    double f_min, f_max;
    no_solution_error(const std::string& msg, double fmin, double fmax)
        : error(msg), f_min(fmin), f_max(fmax) {}
};

} // namespace spdc
