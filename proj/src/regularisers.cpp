#include "tvpwl/regularisers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tvpwl {

namespace {

void require_valid_gamma(const ScalarField& u, const ScalarField& gamma)
{
    if (!u.same_shape(gamma))
        throw std::invalid_argument("gamma shape must match u");
    const double* g = gamma.data();
    for (std::size_t k = 0; k < gamma.size(); ++k)
        if (g[k] < 0.0)
            throw std::invalid_argument("gamma must be nonnegative");
}

} // namespace

double tv(const ScalarField& u, GridSpacing spacing)
{
    const VectorField g = grad(u, spacing);
    const double* a = g.c1().data();
    const double* b = g.c2().data();
    double s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k)
        s += std::sqrt(a[k] * a[k] + b[k] * b[k]);
    return s * spacing.h * spacing.h;
}

double tvpwl_closed_form(const ScalarField& u, const ScalarField& gamma, GridSpacing spacing)
{
    require_valid_gamma(u, gamma);
    const VectorField gr = grad(u, spacing);
    const double* a = gr.c1().data();
    const double* b = gr.c2().data();
    const double* g = gamma.data();
    double s = 0.0;
    for (std::size_t k = 0; k < gr.size(); ++k) {
        const double excess = std::sqrt(a[k] * a[k] + b[k] * b[k]) - g[k];
        if (excess > 0.0)
            s += excess;
    }
    return s * spacing.h * spacing.h;
}

double tvpwl_primal(const ScalarField& u, const ScalarField& gamma, GridSpacing spacing)
{
    require_valid_gamma(u, gamma);
    const VectorField gr = grad(u, spacing);
    const double* a = gr.c1().data();
    const double* b = gr.c2().data();
    const double* g = gamma.data();
    double s = 0.0;
    for (std::size_t k = 0; k < gr.size(); ++k) {
        const double n = std::sqrt(a[k] * a[k] + b[k] * b[k]);
        // Minimiser over |g*| <= gamma: clip grad u radially to norm gamma.
        const double clip = (n > g[k]) ? g[k] / n : 1.0;
        const double r1 = a[k] - clip * a[k];
        const double r2 = b[k] - clip * b[k];
        s += std::sqrt(r1 * r1 + r2 * r2);
    }
    return s * spacing.h * spacing.h;
}

double tvpwl_dual_value(const ScalarField& u, const ScalarField& gamma, const VectorField& phi,
                        GridSpacing spacing)
{
    require_valid_gamma(u, gamma);
    if (phi.rows() != u.rows() || phi.cols() != u.cols())
        throw std::invalid_argument("phi shape must match u");
    const double* a = phi.c1().data();
    const double* b = phi.c2().data();
    const double* g = gamma.data();
    double penalty = 0.0;
    for (std::size_t k = 0; k < phi.size(); ++k) {
        const double n = std::sqrt(a[k] * a[k] + b[k] * b[k]);
        if (n > 1.0 + 1e-12)
            throw std::invalid_argument("tvpwl_dual_value: phi is infeasible (|phi| > 1)");
        penalty += g[k] * n;
    }
    const double h2 = spacing.h * spacing.h;
    return inner(u, div(phi, spacing)) * h2 - penalty * h2;
}

RegulariserValue evaluate_tvpwl(const ScalarField& u, const ScalarField& gamma,
                                Formulation formulation, GridSpacing spacing)
{
    RegulariserValue out;
    out.formulation = formulation;
    switch (formulation) {
    case Formulation::primal_projection:
        out.value = tvpwl_primal(u, gamma, spacing);
        break;
    case Formulation::closed_form:
        out.value = tvpwl_closed_form(u, gamma, spacing);
        break;
    case Formulation::dual_lower_bound: {
        VectorField phi = grad(u, spacing);
        const double* a = phi.c1().data();
        const double* b = phi.c2().data();
        for (std::size_t k = 0; k < phi.size(); ++k) {
            const double n = std::sqrt(a[k] * a[k] + b[k] * b[k]);
            const double scale = (n > 1.0) ? -1.0 / n : -1.0;
            phi.c1().data()[k] *= scale;
            phi.c2().data()[k] *= scale;
        }
        out.value = std::max(0.0, tvpwl_dual_value(u, gamma, phi, spacing));
        break;
    }
    }
    return out;
}

SandwichResult sandwich_check(const ScalarField& u, const ScalarField& gamma, GridSpacing spacing)
{
    require_valid_gamma(u, gamma);
    const double h2 = spacing.h * spacing.h;
    const double* g = gamma.data();
    double gamma_mass = 0.0;
    for (std::size_t k = 0; k < gamma.size(); ++k)
        gamma_mass += g[k];
    SandwichResult r;
    r.upper = tv(u, spacing);
    r.lower = r.upper - gamma_mass * h2;
    r.value = tvpwl_closed_form(u, gamma, spacing);
    const double scale = std::abs(r.upper) + gamma_mass * h2 + 1.0;
    if (r.value < r.lower - 1e-10 * scale || r.value > r.upper + 1e-10 * scale)
        throw std::logic_error("sandwich_check: ordering violated");
    return r;
}

} // namespace tvpwl
