#pragma once

#include "tvpwl/field.hpp"
#include "tvpwl/solver.hpp"

namespace tvpwl {

/// Controls for estimating the Lipschitz budget gamma from a noisy image via
/// an over-regularised ROF solve. The inner solve can be loose: the final
/// reconstruction is insensitive to moderate changes in lambda.
struct GammaEstimateParams {
    double lambda = 500.0;
    double rho = 2.0;       // Gaussian std of the residual filter, in pixels
    double rof_tol = 1e-4;
    int rof_max_iter = 20000;
};

/// Unconstrained ROF denoising, min_u lambda*TV(u) + 1/2 |u - f|^2, via the
/// primal-dual scheme with lambda folded into the dual-ball radius.
ScalarField rof_denoise(const ScalarField& f, double lambda, double tol = 1e-4,
                        int max_iter = 20000);

/// Full solver report for the ROF solve (history, iteration count).
SolveReport rof_denoise_report(const ScalarField& f, double lambda, double tol = 1e-4,
                               int max_iter = 20000);

/// Separable Gaussian convolution, kernel truncated at radius ceil(3*rho) and
/// renormalised, reflected (edge-repeating) boundary.
ScalarField gaussian_smooth(const ScalarField& r, double rho);

/// Over-TV pipeline: ROF with large lambda, residual r = f - u_hat, Gaussian
/// smoothing, and gamma = |grad r_rho|.
ScalarField estimate_gamma_over_tv(const ScalarField& f, const GammaEstimateParams& params = {});

/// Idealised gamma: gradient-magnitude map of the ground-truth image.
ScalarField gamma_from_ground_truth(const ScalarField& u_gt);

} // namespace tvpwl
