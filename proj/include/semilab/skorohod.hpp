#pragma once

#include "semilab/measure.hpp"

namespace semilab {

// Derivative measure of mu = rho dx: centered finite difference of the density
// (one-sided at the boundary). A measure with atoms has no bounded-variation
// density and is rejected.
Measure skorohod_derivative(const Measure& mu);

// Second derivative measure; realizes the generator A mu on its domain.
Measure laplacian(const Measure& mu);

// | <(f(.-t) - f)/t, mu> - <f, D mu> |  (difference-quotient consistency).
double quotient_residual(const Measure& mu, const TestFunction& f, double t);

// | <f', mu> + <f, D mu> |  (integration by parts against smooth f).
double parts_residual(const Measure& mu, const TestFunction& f);

}  // namespace semilab
