#include "spdc/dispersion.hpp"

#include <cmath>
#include <string>

namespace spdc {

double DispersionModel::n2(double lam) const {
    const double L2 = lam * lam;
    double s = 0.0;
    for (const Term& t : terms) {
        switch (t.kind) {
        case Term::Kind::Const:
            s += t.a;
            break;
        case Term::Kind::Pole: {
            const double d = L2 - t.b;
            if (std::fabs(d) < 1e-12)
                throw range_error("dispersion pole hit at lambda = " + std::to_string(lam) + " um");
            s += t.a / d;
            break;
        }
        case Term::Kind::Resonance: {
            const double d = L2 - t.b;
            if (std::fabs(d) < 1e-12)
                throw range_error("dispersion pole hit at lambda = " + std::to_string(lam) + " um");
            s += t.a * L2 / d;
            break;
        }
        case Term::Kind::Power:
            s += t.a * std::pow(lam, t.b);
            break;
        }
    }
    return s;
}

double DispersionModel::dn2_dlam(double lam) const {
    const double L2 = lam * lam;
    double s = 0.0;
    for (const Term& t : terms) {
        switch (t.kind) {
        case Term::Kind::Const:
            break;
        case Term::Kind::Pole: {
            const double d = L2 - t.b;
            s += -2.0 * t.a * lam / (d * d);
            break;
        }
        case Term::Kind::Resonance: {
            // d/dlam [a L2/(L2-b)] = -2 a b lam / (L2-b)^2
            const double d = L2 - t.b;
            s += -2.0 * t.a * t.b * lam / (d * d);
            break;
        }
        case Term::Kind::Power:
            s += t.a * t.b * std::pow(lam, t.b - 1.0);
            break;
        }
    }
    return s;
}

double DispersionModel::n(double lam) const {
    return std::sqrt(n2(lam));
}

double DispersionModel::dn_dlam(double lam) const {
    return dn2_dlam(lam) / (2.0 * n(lam));
}

double DispersionModel::group_index(double lam) const {
    return n(lam) - lam * dn_dlam(lam);
}

double DispersionModel::n_checked(double lam) const {
    if (!valid_range_um.contains(lam))
        throw range_error("lambda = " + std::to_string(lam) + " um outside model range [" +
                          std::to_string(valid_range_um.lo) + ", " +
                          std::to_string(valid_range_um.hi) + "] um");
    const double v = n2(lam);
    if (!(v > 0.0))
        throw validation_error("n^2 <= 0 at lambda = " + std::to_string(lam) + " um");
    return std::sqrt(v);
}

} // namespace spdc
