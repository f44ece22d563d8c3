#pragma once

#include "tvpwl/field.hpp"

#include <vector>

namespace tvpwl {

/// Step sizes and stopping controls for the primal-dual iterations.
///
/// The defaults put sigma = tau = 0.99/sqrt(8) at the stability boundary
/// sigma*tau*L^2 < 1 for the first-order operator (L^2 = 8 at h = 1), with
/// full extrapolation theta = 1.
struct SolverParams {
    double sigma = 0.350017856687341; // 0.99 / sqrt(8)
    double tau = 0.350017856687341;
    double theta = 1.0;
    double tol = 1e-3;
    int max_iter = 100000;
    bool record_history = true;
};

/// Weight of the second-order term in the TGV^2 regulariser.
struct TgvParams {
    double beta = 1.25;
};

/// Outcome of one solve. Histories are recorded per iteration when
/// record_history is set; sigma_used/tau_used echo the effective step sizes
/// (they differ from the requested ones only when the second-order solver has
/// to rescale them for its larger operator norm).
struct SolveReport {
    int iterations = 0;
    std::vector<double> residual_history;
    std::vector<double> gap_history; // delta - |u^k - f|_2
    double wall_time = 0.0;          // seconds
    ScalarField final_u;
    bool converged = false;
    double final_residual = 0.0;
    double sigma_used = 0.0;
    double tau_used = 0.0;
};

/// Primal-dual denoising with the piecewise-Lipschitz TV regulariser:
/// min TVpwL_gamma(u) s.t. |u - f|_2 <= delta. Nonconvergence within
/// max_iter is reported, not thrown.
SolveReport solve_tvpwl(const ScalarField& f, const ScalarField& gamma, double delta,
                        const SolverParams& params);

/// Same scheme with the plain TV regulariser (unit-ball dual projection).
SolveReport solve_tv(const ScalarField& f, double delta, const SolverParams& params);

/// Second-order TGV^2 baseline: min |grad u - w| + beta |E w| over (u, w)
/// subject to the same fidelity ball, solved by the stacked primal-dual
/// scheme. Step sizes are rescaled if needed so that sigma*tau*|K|^2 < 1
/// holds for the stacked operator.
SolveReport solve_tgv2(const ScalarField& f, double delta, TgvParams tgv,
                       const SolverParams& params);

/// Normalised first-order optimality residual between consecutive iterates:
///   1/(M*N) * ( sum |(u^k - u^k1 - tau*(-div)(p^k - p^k1)) / tau|
///             + sum |(p^k - p^k1 - sigma*grad(u^k - ubar^k1)) / sigma| )
/// with the second sum running entrywise over both vector components.
double residual(const ScalarField& u_k, const ScalarField& u_k1, const VectorField& p_k,
                const VectorField& p_k1, const ScalarField& ubar_k1, double sigma, double tau);

} // namespace tvpwl
