#pragma once

#include "tvpwl/field.hpp"

namespace tvpwl {

/// Everything the proximal maps of one solve need: step sizes, the pixelwise
/// Lipschitz budget gamma, the fidelity radius delta and the noisy data f.
struct ProxContext {
    double sigma = 0.0;
    double tau = 0.0;
    ScalarField gamma;
    double delta = 0.0;
    ScalarField f;
};

/// Proximal map of the conjugate regulariser term, applied pointwise with
/// n = |p_diamond(x)|:
///   0                          if n <= sigma*gamma(x)
///   p_diamond(x)/n             if n >= 1 + sigma*gamma(x)
///   (1 - sigma*gamma(x)/n) * p_diamond(x)   otherwise.
/// The n = 0 case falls into the first branch, so no division by zero can
/// occur. Output norms never exceed 1.
VectorField prox_rstar(const VectorField& p_diamond, double sigma, const ScalarField& gamma);
VectorField prox_rstar(const VectorField& p_diamond, const ProxContext& ctx);

/// Proximal map of the fidelity indicator: projection of u_diamond onto the
/// L2 ball of radius delta around f.
ScalarField prox_f(const ScalarField& u_diamond, const ScalarField& f, double delta);
ScalarField prox_f(const ScalarField& u_diamond, const ProxContext& ctx);

/// Pointwise radial projection onto the ball of the given radius; zero vectors
/// stay zero.
VectorField project_unit_ball(const VectorField& p, double radius);

/// Frobenius-norm analogue for symmetric tensors (q12 counted twice).
SymTensorField project_tensor_ball(const SymTensorField& q, double radius);

} // namespace tvpwl
