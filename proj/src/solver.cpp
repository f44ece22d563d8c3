#include "tvpwl/solver.hpp"

#include "tvpwl/diffops.hpp"
#include "tvpwl/prox.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace tvpwl {

namespace {

void validate_common(const SolverParams& params)
{
    if (!(params.sigma > 0.0) || !(params.tau > 0.0))
        throw std::invalid_argument("SolverParams: sigma and tau must be positive");
    if (params.theta < 0.0 || params.theta > 1.0)
        throw std::invalid_argument("SolverParams: theta must lie in [0,1]");
    if (!(params.tol > 0.0))
        throw std::invalid_argument("SolverParams: tol must be positive");
    if (params.max_iter < 1)
        throw std::invalid_argument("SolverParams: max_iter must be >= 1");
}

double elapsed_seconds(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double gap_value(const ScalarField& u, const ScalarField& f, double delta)
{
    double dist2 = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = u.data()[k] - f.data()[k];
        dist2 += d * d;
    }
    return delta - std::sqrt(dist2);
}

// Shared first-order loop; the dual prox is the only difference between the
// TV and TVpwL instantiations.
template <typename DualProx>
SolveReport run_first_order(const ScalarField& f, double delta, const SolverParams& params,
                            DualProx&& dual_prox)
{
    validate_common(params);
    if (params.sigma * params.tau * 8.0 >= 1.0)
        throw std::invalid_argument("SolverParams: sigma*tau*L^2 must be < 1 (L^2 = 8)");
    if (!(delta >= 0.0))
        throw std::invalid_argument("delta must be nonnegative");

    const auto start = std::chrono::steady_clock::now();
    const std::size_t n_px = f.size();
    const double sigma = params.sigma, tau = params.tau, theta = params.theta;

    SolveReport report;
    report.sigma_used = sigma;
    report.tau_used = tau;

    ScalarField u = f;
    ScalarField ubar = f;
    VectorField p = grad(f);

    for (int k = 1; k <= params.max_iter; ++k) {
        // Dual ascent step
        VectorField p_arg = grad(ubar);
        for (std::size_t idx = 0; idx < n_px; ++idx) {
            p_arg.c1().data()[idx] = p.c1().data()[idx] + sigma * p_arg.c1().data()[idx];
            p_arg.c2().data()[idx] = p.c2().data()[idx] + sigma * p_arg.c2().data()[idx];
        }
        VectorField p_new = dual_prox(p_arg);

        // Primal descent step
        ScalarField u_arg = div(p_new);
        for (std::size_t idx = 0; idx < n_px; ++idx)
            u_arg.data()[idx] = u.data()[idx] + tau * u_arg.data()[idx];
        ScalarField u_new = prox_f(u_arg, f, delta);

        // Extrapolation
        ScalarField ubar_new(f.rows(), f.cols());
        for (std::size_t idx = 0; idx < n_px; ++idx)
            ubar_new.data()[idx] =
                u_new.data()[idx] + theta * (u_new.data()[idx] - u.data()[idx]);

        const double res = residual(u, u_new, p, p_new, ubar_new, sigma, tau);
        report.iterations = k;
        report.final_residual = res;
        if (params.record_history) {
            report.residual_history.push_back(res);
            report.gap_history.push_back(gap_value(u_new, f, delta));
        }

        u = std::move(u_new);
        p = std::move(p_new);
        ubar = std::move(ubar_new);

        if (res <= params.tol) {
            report.converged = true;
            break;
        }
    }

    report.final_u = std::move(u);
    report.wall_time = elapsed_seconds(start);
    return report;
}

} // namespace

double residual(const ScalarField& u_k, const ScalarField& u_k1, const VectorField& p_k,
                const VectorField& p_k1, const ScalarField& ubar_k1, double sigma, double tau)
{
    const std::size_t n_px = u_k.size();
    VectorField dp(u_k.rows(), u_k.cols());
    for (std::size_t idx = 0; idx < n_px; ++idx) {
        dp.c1().data()[idx] = p_k.c1().data()[idx] - p_k1.c1().data()[idx];
        dp.c2().data()[idx] = p_k.c2().data()[idx] - p_k1.c2().data()[idx];
    }
    const ScalarField div_dp = div(dp);

    ScalarField du_bar(u_k.rows(), u_k.cols());
    for (std::size_t idx = 0; idx < n_px; ++idx)
        du_bar.data()[idx] = u_k.data()[idx] - ubar_k1.data()[idx];
    const VectorField g = grad(du_bar);

    // u^k - u^k1 - tau*(-div)(p^k - p^k1) == du + tau * div(dp)
    double s = 0.0;
    for (std::size_t idx = 0; idx < n_px; ++idx) {
        const double du = u_k.data()[idx] - u_k1.data()[idx];
        s += std::abs((du + tau * div_dp.data()[idx]) / tau);
    }
    for (std::size_t idx = 0; idx < n_px; ++idx) {
        s += std::abs((dp.c1().data()[idx] - sigma * g.c1().data()[idx]) / sigma);
        s += std::abs((dp.c2().data()[idx] - sigma * g.c2().data()[idx]) / sigma);
    }
    return s / static_cast<double>(n_px);
}

SolveReport solve_tvpwl(const ScalarField& f, const ScalarField& gamma, double delta,
                        const SolverParams& params)
{
    if (!f.same_shape(gamma))
        throw std::invalid_argument("solve_tvpwl: gamma shape mismatch");
    for (std::size_t k = 0; k < gamma.size(); ++k)
        if (gamma.data()[k] < 0.0)
            throw std::invalid_argument("solve_tvpwl: gamma must be nonnegative");
    const double sigma = params.sigma;
    return run_first_order(f, delta, params, [&gamma, sigma](const VectorField& p_diamond) {
        return prox_rstar(p_diamond, sigma, gamma);
    });
}

SolveReport solve_tv(const ScalarField& f, double delta, const SolverParams& params)
{
    return run_first_order(f, delta, params, [](const VectorField& p_diamond) {
        return project_unit_ball(p_diamond, 1.0);
    });
}

SolveReport solve_tgv2(const ScalarField& f, double delta, TgvParams tgv,
                       const SolverParams& params)
{
    validate_common(params);
    if (!(tgv.beta > 0.0))
        throw std::invalid_argument("solve_tgv2: beta must be positive");
    if (!(delta >= 0.0))
        throw std::invalid_argument("delta must be nonnegative");

    const auto start = std::chrono::steady_clock::now();
    const int M = f.rows(), N = f.cols();
    const std::size_t n_px = f.size();

    // Stacked operator norm with a 1% safety margin; shrink the steps if the
    // requested ones violate the stability condition.
    const double l2 = 1.01 * opnorm_estimate_tgv(M, N, GridSpacing{}, 100);
    double sigma = params.sigma, tau = params.tau;
    if (sigma * tau * l2 >= 1.0) {
        const double r = std::sqrt(0.99 / (sigma * tau * l2));
        sigma *= r;
        tau *= r;
    }
    const double theta = params.theta;

    SolveReport report;
    report.sigma_used = sigma;
    report.tau_used = tau;

    ScalarField u = f, ubar = f;
    VectorField w(M, N), wbar(M, N);
    VectorField p = grad(f);
    SymTensorField q(M, N);

    for (int k = 1; k <= params.max_iter; ++k) {
        // Dual step: p against (grad u - w), q against sym_grad w
        VectorField p_arg = grad(ubar);
        for (std::size_t idx = 0; idx < n_px; ++idx) {
            p_arg.c1().data()[idx] =
                p.c1().data()[idx] + sigma * (p_arg.c1().data()[idx] - wbar.c1().data()[idx]);
            p_arg.c2().data()[idx] =
                p.c2().data()[idx] + sigma * (p_arg.c2().data()[idx] - wbar.c2().data()[idx]);
        }
        VectorField p_new = project_unit_ball(p_arg, 1.0);

        SymTensorField q_arg = sym_grad(wbar);
        for (std::size_t idx = 0; idx < n_px; ++idx) {
            q_arg.q11().data()[idx] = q.q11().data()[idx] + sigma * q_arg.q11().data()[idx];
            q_arg.q22().data()[idx] = q.q22().data()[idx] + sigma * q_arg.q22().data()[idx];
            q_arg.q12().data()[idx] = q.q12().data()[idx] + sigma * q_arg.q12().data()[idx];
        }
        SymTensorField q_new = project_tensor_ball(q_arg, tgv.beta);

        // Primal step
        ScalarField u_arg = div(p_new);
        for (std::size_t idx = 0; idx < n_px; ++idx)
            u_arg.data()[idx] = u.data()[idx] + tau * u_arg.data()[idx];
        ScalarField u_new = prox_f(u_arg, f, delta);

        VectorField w_new = sym_div(q_new);
        for (std::size_t idx = 0; idx < n_px; ++idx) {
            w_new.c1().data()[idx] =
                w.c1().data()[idx] + tau * (p_new.c1().data()[idx] + w_new.c1().data()[idx]);
            w_new.c2().data()[idx] =
                w.c2().data()[idx] + tau * (p_new.c2().data()[idx] + w_new.c2().data()[idx]);
        }

        // Extrapolation on both primal variables
        ScalarField ubar_new(M, N);
        for (std::size_t idx = 0; idx < n_px; ++idx)
            ubar_new.data()[idx] =
                u_new.data()[idx] + theta * (u_new.data()[idx] - u.data()[idx]);
        VectorField wbar_new(M, N);
        for (std::size_t idx = 0; idx < n_px; ++idx) {
            wbar_new.c1().data()[idx] =
                w_new.c1().data()[idx] + theta * (w_new.c1().data()[idx] - w.c1().data()[idx]);
            wbar_new.c2().data()[idx] =
                w_new.c2().data()[idx] + theta * (w_new.c2().data()[idx] - w.c2().data()[idx]);
        }

        // Residual of the stacked system, same normalisation as first order.
        double s = 0.0;
        {
            VectorField dp(M, N);
            for (std::size_t idx = 0; idx < n_px; ++idx) {
                dp.c1().data()[idx] = p.c1().data()[idx] - p_new.c1().data()[idx];
                dp.c2().data()[idx] = p.c2().data()[idx] - p_new.c2().data()[idx];
            }
            SymTensorField dq(M, N);
            for (std::size_t idx = 0; idx < n_px; ++idx) {
                dq.q11().data()[idx] = q.q11().data()[idx] - q_new.q11().data()[idx];
                dq.q22().data()[idx] = q.q22().data()[idx] - q_new.q22().data()[idx];
                dq.q12().data()[idx] = q.q12().data()[idx] - q_new.q12().data()[idx];
            }
            const ScalarField div_dp = div(dp);
            const VectorField sdiv_dq = sym_div(dq);
            for (std::size_t idx = 0; idx < n_px; ++idx) {
                const double du = u.data()[idx] - u_new.data()[idx];
                s += std::abs((du + tau * div_dp.data()[idx]) / tau);
            }
            for (std::size_t idx = 0; idx < n_px; ++idx) {
                const double dw1 = w.c1().data()[idx] - w_new.c1().data()[idx];
                const double dw2 = w.c2().data()[idx] - w_new.c2().data()[idx];
                s += std::abs(
                    (dw1 + tau * (dp.c1().data()[idx] + sdiv_dq.c1().data()[idx])) / tau);
                s += std::abs(
                    (dw2 + tau * (dp.c2().data()[idx] + sdiv_dq.c2().data()[idx])) / tau);
            }
            ScalarField du_bar(M, N);
            for (std::size_t idx = 0; idx < n_px; ++idx)
                du_bar.data()[idx] = u.data()[idx] - ubar_new.data()[idx];
            const VectorField g = grad(du_bar);
            VectorField dw_bar(M, N);
            for (std::size_t idx = 0; idx < n_px; ++idx) {
                dw_bar.c1().data()[idx] = w.c1().data()[idx] - wbar_new.c1().data()[idx];
                dw_bar.c2().data()[idx] = w.c2().data()[idx] - wbar_new.c2().data()[idx];
            }
            const SymTensorField eg = sym_grad(dw_bar);
            for (std::size_t idx = 0; idx < n_px; ++idx) {
                const double k1 = g.c1().data()[idx] - dw_bar.c1().data()[idx];
                const double k2 = g.c2().data()[idx] - dw_bar.c2().data()[idx];
                s += std::abs((dp.c1().data()[idx] - sigma * k1) / sigma);
                s += std::abs((dp.c2().data()[idx] - sigma * k2) / sigma);
            }
            for (std::size_t idx = 0; idx < n_px; ++idx) {
                s += std::abs((dq.q11().data()[idx] - sigma * eg.q11().data()[idx]) / sigma);
                s += std::abs((dq.q22().data()[idx] - sigma * eg.q22().data()[idx]) / sigma);
                s += std::abs((dq.q12().data()[idx] - sigma * eg.q12().data()[idx]) / sigma);
            }
            s /= static_cast<double>(n_px);
        }

        report.iterations = k;
        report.final_residual = s;
        if (params.record_history) {
            report.residual_history.push_back(s);
            report.gap_history.push_back(gap_value(u_new, f, delta));
        }

        u = std::move(u_new);
        p = std::move(p_new);
        q = std::move(q_new);
        w = std::move(w_new);
        ubar = std::move(ubar_new);
        wbar = std::move(wbar_new);

        if (s <= params.tol) {
            report.converged = true;
            break;
        }
    }

    report.final_u = std::move(u);
    report.wall_time = elapsed_seconds(start);
    return report;
}

} // namespace tvpwl
