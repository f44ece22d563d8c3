#include "tvpwl/gamma_estimate.hpp"

#include "tvpwl/diffops.hpp"
#include "tvpwl/prox.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tvpwl {

SolveReport rof_denoise_report(const ScalarField& f, double lambda, double tol, int max_iter)
{
    if (!(lambda > 0.0))
        throw std::invalid_argument("rof_denoise: lambda must be positive");
    if (!(tol > 0.0) || max_iter < 1)
        throw std::invalid_argument("rof_denoise: invalid controls");

    const auto start = std::chrono::steady_clock::now();
    SolverParams params; // default steps satisfy sigma*tau*8 < 1
    const double sigma = params.sigma, tau = params.tau, theta = params.theta;
    const std::size_t n_px = f.size();

    SolveReport report;
    report.sigma_used = sigma;
    report.tau_used = tau;

    ScalarField u = f, ubar = f;
    VectorField p = grad(f);

    for (int k = 1; k <= max_iter; ++k) {
        VectorField p_arg = grad(ubar);
        for (std::size_t idx = 0; idx < n_px; ++idx) {
            p_arg.c1().data()[idx] = p.c1().data()[idx] + sigma * p_arg.c1().data()[idx];
            p_arg.c2().data()[idx] = p.c2().data()[idx] + sigma * p_arg.c2().data()[idx];
        }
        VectorField p_new = project_unit_ball(p_arg, lambda);

        // Quadratic data term: prox of 1/2 |u - f|^2
        ScalarField u_new = div(p_new);
        for (std::size_t idx = 0; idx < n_px; ++idx) {
            const double u_diamond = u.data()[idx] + tau * u_new.data()[idx];
            u_new.data()[idx] = (u_diamond + tau * f.data()[idx]) / (1.0 + tau);
        }

        ScalarField ubar_new(f.rows(), f.cols());
        for (std::size_t idx = 0; idx < n_px; ++idx)
            ubar_new.data()[idx] =
                u_new.data()[idx] + theta * (u_new.data()[idx] - u.data()[idx]);

        const double res = residual(u, u_new, p, p_new, ubar_new, sigma, tau);
        report.iterations = k;
        report.final_residual = res;

        u = std::move(u_new);
        p = std::move(p_new);
        ubar = std::move(ubar_new);

        if (res <= tol) {
            report.converged = true;
            break;
        }
    }

    report.final_u = std::move(u);
    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ScalarField rof_denoise(const ScalarField& f, double lambda, double tol, int max_iter)
{
    return rof_denoise_report(f, lambda, tol, max_iter).final_u;
}

namespace {

std::vector<double> gaussian_kernel(double rho)
{
    const int radius = static_cast<int>(std::ceil(3.0 * rho));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int t = -radius; t <= radius; ++t) {
        const double v = std::exp(-0.5 * (t / rho) * (t / rho));
        kernel[t + radius] = v;
        sum += v;
    }
    for (double& v : kernel)
        v /= sum;
    return kernel;
}

// Index into [0, n) with edge-repeating reflection: -1 -> 0, n -> n-1, ...
int reflect_index(int idx, int n)
{
    while (idx < 0 || idx >= n) {
        if (idx < 0)
            idx = -idx - 1;
        if (idx >= n)
            idx = 2 * n - idx - 1;
    }
    return idx;
}

} // namespace

ScalarField gaussian_smooth(const ScalarField& r, double rho)
{
    if (!(rho > 0.0))
        throw std::invalid_argument("gaussian_smooth: rho must be positive");
    const std::vector<double> kernel = gaussian_kernel(rho);
    const int radius = static_cast<int>(kernel.size() / 2);
    const int M = r.rows(), N = r.cols();

    ScalarField tmp(M, N);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            double s = 0.0;
            for (int t = -radius; t <= radius; ++t)
                s += kernel[t + radius] * r(i, reflect_index(j + t, N));
            tmp(i, j) = s;
        }
    }
    ScalarField out(M, N);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            double s = 0.0;
            for (int t = -radius; t <= radius; ++t)
                s += kernel[t + radius] * tmp(reflect_index(i + t, M), j);
            out(i, j) = s;
        }
    }
    return out;
}

ScalarField estimate_gamma_over_tv(const ScalarField& f, const GammaEstimateParams& params)
{
    if (!(params.lambda > 0.0) || !(params.rho > 0.0))
        throw std::invalid_argument("estimate_gamma_over_tv: invalid params");
    const ScalarField u_hat =
        rof_denoise(f, params.lambda, params.rof_tol, params.rof_max_iter);
    ScalarField residual_img(f.rows(), f.cols());
    for (std::size_t k = 0; k < f.size(); ++k)
        residual_img.data()[k] = f.data()[k] - u_hat.data()[k];
    const ScalarField smoothed = gaussian_smooth(residual_img, params.rho);
    return norm2_pointwise(grad(smoothed));
}

ScalarField gamma_from_ground_truth(const ScalarField& u_gt)
{
    return norm2_pointwise(grad(u_gt));
}

} // namespace tvpwl
