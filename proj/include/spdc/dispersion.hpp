#pragma once

#include <vector>

#include "spdc/errors.hpp"

namespace spdc {

// One additive term of an n^2(lambda) model. Kinds:
//   Const      n2 += a
//   Pole       n2 += a / (lambda^2 - b)
//   Resonance  n2 += a * lambda^2 / (lambda^2 - b)
//   Power      n2 += a * lambda^b   (b integer, positive or negative)
struct Term {
    enum class Kind { Const, Pole, Resonance, Power };
    Kind kind;
    double a = 0.0;
    double b = 0.0;
};

struct Interval {
    double lo = 0.0, hi = 0.0;
    bool contains(double x) const { return x >= lo && x <= hi; }
};

// Term-list dispersion model for one principal axis. All wavelengths in um.
class DispersionModel {
public:
    std::vector<Term> terms;
    Interval valid_range_um;

    // Raw evaluations used by solvers and grid fills: no range guard, so a
    // scan may step through a pole; callers own their domains. A pole hit
    // within 1e-12 um^2 is still an error (division blows up silently
    // otherwise), and negative n^2 yields NaN from sqrt.
    double n2(double lam) const;
    double dn2_dlam(double lam) const;   // analytic, term-wise
    double n(double lam) const;
    double dn_dlam(double lam) const;    // dn2/(2n)
    double group_index(double lam) const; // n - lambda*dn/dlambda

    // Range-checked accessor: range_error outside valid_range_um,
    // validation_error on negative n^2.
    double n_checked(double lam) const;
};

} // namespace spdc
