#pragma once

#include <stdexcept>

namespace semilab {

// Type and growth bound of the semigroup plus the bi-density constant eta.
// The Gauss-Weierstrass instance has M = 1, omega = 0 (the tv-contraction
// tests pin this down); eta is a configuration knob, default 2.
struct SemigroupParams {
    double type_bound = 1.0;    // M
    double growth_bound = 0.0;  // omega
    double eta = 2.0;

    SemigroupParams() = default;
    SemigroupParams(double m, double omega, double eta_) : type_bound(m), growth_bound(omega), eta(eta_) {
        if (!(type_bound >= 1.0)) throw std::invalid_argument("type bound M must be >= 1");
        if (!(eta > 1.0)) throw std::invalid_argument("eta must be > 1");
    }

    double stage_threshold() const { return 1.0 / (2.0 * eta); }
};

}  // namespace semilab
