#include "tvpwl/checks.hpp"

#include "tvpwl/diffops.hpp"
#include "tvpwl/gamma_estimate.hpp"
#include "tvpwl/metrics.hpp"
#include "tvpwl/prox.hpp"
#include "tvpwl/regularisers.hpp"
#include "tvpwl/solver.hpp"
#include "tvpwl/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tvpwl {

namespace oracle {

long double golden_section_min(const std::function<long double(long double)>& f,
                               long double lo, long double hi, int iters)
{
    const long double inv_phi = 0.61803398874989484820L;
    long double a = lo, b = hi;
    long double c = b - inv_phi * (b - a);
    long double d = a + inv_phi * (b - a);
    long double fc = f(c), fd = f(d);
    for (int k = 0; k < iters; ++k) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5L * (a + b);
}

double prox_rstar_scale(double n, double sigma_gamma)
{
    if (n == 0.0)
        return 0.0;
    const long double nl = n, sg = sigma_gamma;
    const auto objective = [nl, sg](long double alpha) {
        return sg * nl * alpha + 0.5L * nl * nl * alpha * alpha - nl * nl * alpha;
    };
    return static_cast<double>(golden_section_min(objective, 0.0L, 1.0L / nl));
}

ScalarField random_field(int rows, int cols, std::uint64_t seed, double lo, double hi)
{
    std::mt19937_64 gen(seed);
    ScalarField out(rows, cols);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double u01 = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        out.data()[k] = lo + (hi - lo) * u01;
    }
    return out;
}

VectorField random_vector_field(int rows, int cols, std::uint64_t seed, double lo, double hi)
{
    ScalarField c1 = random_field(rows, cols, seed, lo, hi);
    ScalarField c2 = random_field(rows, cols, seed + 1, lo, hi);
    return VectorField(std::move(c1), std::move(c2));
}

} // namespace oracle

namespace checks {

namespace {

std::string format_max(double value)
{
    std::ostringstream os;
    os << "max " << value;
    return os.str();
}

const std::vector<std::pair<int, int>> kShapes = {{1, 1}, {1, 7}, {7, 1}, {32, 32}, {33, 47}};

CheckResult check_adjointness()
{
    double worst = 0.0;
    std::uint64_t seed = 100;
    for (const auto& [m, n] : kShapes) {
        for (int trial = 0; trial < 20; ++trial) {
            const ScalarField u = oracle::random_field(m, n, seed++);
            const VectorField p = oracle::random_vector_field(m, n, seed);
            seed += 2;
            const VectorField gu = grad(u);
            const double err = std::abs(inner(gu, p) + inner(u, div(p)));
            const double scale = l2_norm(gu) * l2_norm(p) + 1.0;
            worst = std::max(worst, err / scale);
        }
    }
    return {"adjointness-grad-div", worst <= 1e-12, format_max(worst)};
}

CheckResult check_adjointness_sym()
{
    double worst = 0.0;
    std::uint64_t seed = 300;
    for (const auto& [m, n] : kShapes) {
        for (int trial = 0; trial < 20; ++trial) {
            const VectorField w = oracle::random_vector_field(m, n, seed);
            seed += 2;
            SymTensorField q(m, n);
            q.q11() = oracle::random_field(m, n, seed++);
            q.q22() = oracle::random_field(m, n, seed++);
            q.q12() = oracle::random_field(m, n, seed++);
            const SymTensorField ew = sym_grad(w);
            const double err = std::abs(inner(ew, q) + inner(w, sym_div(q)));
            const double scale =
                std::sqrt(inner(ew, ew)) * std::sqrt(inner(q, q)) + 1.0;
            worst = std::max(worst, err / scale);
        }
    }
    return {"adjointness-symgrad-symdiv", worst <= 1e-12, format_max(worst)};
}

CheckResult check_opnorm()
{
    const double est_short = opnorm_estimate(64, 64, GridSpacing{}, 50);
    const double est = opnorm_estimate(64, 64, GridSpacing{}, 300);
    const bool pass = est > 7.5 && est <= 8.0 + 1e-9 && est_short <= est + 1e-12;
    std::ostringstream os;
    os << "estimate " << est;
    return {"opnorm-bound", pass, os.str()};
}

CheckResult check_prox_rstar_oracle()
{
    std::mt19937_64 gen(2024);
    const auto uniform = [&gen](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    };
    double worst = 0.0;
    const auto run_case = [&worst](double p1, double p2, double sigma, double gamma) {
        ScalarField g(1, 1, gamma);
        VectorField p(1, 1);
        p.c1()(0, 0) = p1;
        p.c2()(0, 0) = p2;
        const VectorField out = prox_rstar(p, sigma, g);
        const double n = std::sqrt(p1 * p1 + p2 * p2);
        const double alpha = oracle::prox_rstar_scale(n, sigma * gamma);
        worst = std::max(worst, std::abs(out.c1()(0, 0) - alpha * p1));
        worst = std::max(worst, std::abs(out.c2()(0, 0) - alpha * p2));
    };
    for (int k = 0; k < 10000; ++k)
        run_case(uniform(-3, 3), uniform(-3, 3), uniform(1e-3, 2.0), uniform(0.0, 2.0));
    // Boundary ties n = sigma*gamma and n = 1 + sigma*gamma
    for (int k = 0; k < 50; ++k) {
        const double sigma = uniform(1e-2, 2.0);
        const double gamma = uniform(1e-2, 2.0);
        run_case(sigma * gamma, 0.0, sigma, gamma);
        run_case(1.0 + sigma * gamma, 0.0, sigma, gamma);
    }
    return {"prox-rstar-oracle", worst <= 1e-8, format_max(worst)};
}

CheckResult check_prox_f()
{
    double worst = 0.0;
    std::uint64_t seed = 700;
    for (int trial = 0; trial < 20; ++trial) {
        const ScalarField f = oracle::random_field(12, 9, seed++, 0.0, 255.0);
        const ScalarField u = oracle::random_field(12, 9, seed++, -100.0, 355.0);
        const double delta = 5.0 + 2.0 * trial;
        const ScalarField projected = prox_f(u, f, delta);
        ScalarField diff(12, 9);
        for (std::size_t k = 0; k < diff.size(); ++k)
            diff.data()[k] = projected.data()[k] - f.data()[k];
        const double dist = l2_norm(diff);
        ScalarField d0(12, 9);
        for (std::size_t k = 0; k < d0.size(); ++k)
            d0.data()[k] = u.data()[k] - f.data()[k];
        if (l2_norm(d0) > delta)
            worst = std::max(worst, std::abs(dist - delta) / delta);
        // Idempotency
        const ScalarField twice = prox_f(projected, f, delta);
        for (std::size_t k = 0; k < twice.size(); ++k)
            worst = std::max(worst,
                             std::abs(twice.data()[k] - projected.data()[k]) / 255.0);
    }
    return {"prox-f-projection", worst <= 1e-10, format_max(worst)};
}

CheckResult check_equivalence()
{
    double worst = 0.0;
    std::uint64_t seed = 900;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>(seed * 2654435761u % 64);
        const int n = 1 + static_cast<int>((seed + 7) * 40503u % 64);
        const ScalarField u = oracle::random_field(m, n, seed++, 0.0, 255.0);
        const ScalarField gamma = oracle::random_field(m, n, seed++, 0.0, 30.0);
        const double closed = tvpwl_closed_form(u, gamma);
        const double primal = tvpwl_primal(u, gamma);
        worst = std::max(worst, std::abs(closed - primal) / (1.0 + closed));
    }
    return {"tvpwl-formulation-equivalence", worst <= 1e-12, format_max(worst)};
}

CheckResult check_dual_bound()
{
    double worst = -1e300;
    bool ok = true;
    std::uint64_t seed = 1500;
    for (int inst = 0; inst < 10; ++inst) {
        const ScalarField u = oracle::random_field(24, 17, seed++, 0.0, 255.0);
        const ScalarField gamma = oracle::random_field(24, 17, seed++, 0.0, 20.0);
        const double closed = tvpwl_closed_form(u, gamma);
        for (int draw = 0; draw < 100; ++draw) {
            VectorField phi = oracle::random_vector_field(24, 17, seed);
            seed += 2;
            phi = project_unit_ball(phi, 1.0);
            const double value = tvpwl_dual_value(u, gamma, phi);
            worst = std::max(worst, value - closed);
            if (value > closed + 1e-9 * (1.0 + closed))
                ok = false;
        }
    }
    std::ostringstream os;
    os << "max excess " << worst;
    return {"tvpwl-dual-lower-bound", ok, os.str()};
}

CheckResult check_sandwich()
{
    std::uint64_t seed = 2500;
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarField u = oracle::random_field(19, 23, seed++, 0.0, 255.0);
        const ScalarField gamma = oracle::random_field(19, 23, seed++, 0.0, 25.0);
        try {
            sandwich_check(u, gamma);
        } catch (const std::exception& e) {
            return {"sandwich-inequality", false, e.what()};
        }
    }
    return {"sandwich-inequality", true, "100 instances ordered"};
}

CheckResult check_small_solve()
{
    const ScalarField gt = generate_synthetic(64, 64);
    NoiseSpec spec;
    spec.level = 0.10;
    spec.seed = 7;
    const NoisyImage noisy = add_gaussian_noise(gt, spec);
    SolverParams params;
    params.tol = 1e-3;
    params.max_iter = 20000;
    params.record_history = false;

    const SolveReport tv_report = solve_tv(noisy.f, noisy.delta, params);
    const SolveReport pwl_report =
        solve_tvpwl(noisy.f, gamma_from_ground_truth(gt), noisy.delta, params);

    const double lo = noisy.f.min_value(), hi = noisy.f.max_value();
    const double slack = 1e-6 * (hi - lo);
    bool ok = tv_report.converged && pwl_report.converged;
    std::string detail = "converged";
    for (const SolveReport* rep : {&tv_report, &pwl_report}) {
        ScalarField diff(64, 64);
        for (std::size_t k = 0; k < diff.size(); ++k)
            diff.data()[k] = rep->final_u.data()[k] - noisy.f.data()[k];
        if (l2_norm(diff) > noisy.delta * (1.0 + 1e-9)) {
            ok = false;
            detail = "fidelity violated";
        }
        if (rep->final_u.min_value() < lo - slack || rep->final_u.max_value() > hi + slack) {
            ok = false;
            detail = "range violated";
        }
        if (!rep->final_u.all_finite()) {
            ok = false;
            detail = "non-finite output";
        }
    }
    return {"solver-feasibility-max-principle", ok, detail};
}

CheckResult check_gamma_zero_reduction()
{
    const ScalarField f = oracle::random_field(32, 32, 4242, 0.0, 255.0);
    SolverParams params;
    params.tol = 1e-4;
    params.max_iter = 20000;
    params.record_history = false;
    const double delta = 80.0;
    const SolveReport a = solve_tv(f, delta, params);
    const SolveReport b = solve_tvpwl(f, ScalarField(32, 32, 0.0), delta, params);
    double sum2 = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double d = a.final_u.data()[k] - b.final_u.data()[k];
        sum2 += d * d;
    }
    const double rms = std::sqrt(sum2 / static_cast<double>(f.size()));
    return {"gamma-zero-reduction", rms <= 1e-6, format_max(rms)};
}

} // namespace

std::vector<CheckResult> run_all()
{
    return {
        check_adjointness(),      check_adjointness_sym(), check_opnorm(),
        check_prox_rstar_oracle(), check_prox_f(),          check_equivalence(),
        check_dual_bound(),       check_sandwich(),        check_small_solve(),
        check_gamma_zero_reduction(),
    };
}

} // namespace checks

} // namespace tvpwl
