#pragma once

#include "tvpwl/diffops.hpp"
#include "tvpwl/field.hpp"

namespace tvpwl {

/// Which formulation produced a regulariser value.
enum class Formulation { primal_projection, closed_form, dual_lower_bound };

struct RegulariserValue {
    double value = 0.0;
    Formulation formulation = Formulation::closed_form;
};

/// Tagged evaluation of TVpwL. The dual_lower_bound route evaluates the dual
/// objective at the sign-flipped radial clip of grad u (and at phi = 0,
/// whichever is larger), which certifies a nonnegative lower bound that is
/// tight for gamma = 0.
RegulariserValue evaluate_tvpwl(const ScalarField& u, const ScalarField& gamma,
                                Formulation formulation, GridSpacing spacing = {});

/// Isotropic total variation: sum over pixels of |grad u| times the cell area.
double tv(const ScalarField& u, GridSpacing spacing = {});

/// Piecewise-Lipschitz TV, closed form: sum of max(|grad u| - gamma, 0) h^2.
/// Throws on negative gamma entries.
double tvpwl_closed_form(const ScalarField& u, const ScalarField& gamma, GridSpacing spacing = {});

/// Piecewise-Lipschitz TV via the explicit minimiser of the primal problem:
/// g*(x) is grad u(x) clipped radially to norm gamma(x), and the value is
/// sum |grad u - g*| h^2. Kept as an independent code path so the two
/// formulations can be checked against each other.
double tvpwl_primal(const ScalarField& u, const ScalarField& gamma, GridSpacing spacing = {});

/// Value of the dual objective <u, div phi> h^2 - sum gamma |phi| h^2 for a
/// test field with |phi(x)| <= 1. Never exceeds the closed form; throws if
/// phi is infeasible (pointwise norm above 1 + 1e-12).
double tvpwl_dual_value(const ScalarField& u, const ScalarField& gamma, const VectorField& phi,
                        GridSpacing spacing = {});

struct SandwichResult {
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
};

/// Evaluates TV(u) - sum(gamma) h^2 <= TVpwL(u) <= TV(u) and throws
/// logic_error if the ordering is violated beyond 1e-10 * scale.
SandwichResult sandwich_check(const ScalarField& u, const ScalarField& gamma,
                              GridSpacing spacing = {});

} // namespace tvpwl
