#include "tvpwl/checks.hpp"
#include "tvpwl/prox.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

using namespace tvpwl;

namespace {

VectorField single_pixel(double a, double b)
{
    VectorField p(1, 1);
    p.c1()(0, 0) = a;
    p.c2()(0, 0) = b;
    return p;
}

} // namespace

TEST_CASE("prox_rstar dead zone")
{
    const VectorField out = prox_rstar(single_pixel(0.1, 0.0), 1.0, ScalarField(1, 1, 0.5));
    CHECK(out.c1()(0, 0) == 0.0);
    CHECK(out.c2()(0, 0) == 0.0);
}

TEST_CASE("prox_rstar projection branch")
{
    // n = 5 >= 1 + sigma*gamma = 2 -> radial projection
    const VectorField out = prox_rstar(single_pixel(3.0, 4.0), 1.0, ScalarField(1, 1, 1.0));
    CHECK(out.c1()(0, 0) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(out.c2()(0, 0) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("prox_rstar shrinkage branch")
{
    // n = 1, sigma*gamma = 0.2 -> alpha* = 0.8
    const VectorField out = prox_rstar(single_pixel(0.6, 0.8), 0.5, ScalarField(1, 1, 0.4));
    CHECK(out.c1()(0, 0) == doctest::Approx(0.48).epsilon(1e-12));
    CHECK(out.c2()(0, 0) == doctest::Approx(0.64).epsilon(1e-12));
}

TEST_CASE("prox_rstar branch ties coincide")
{
    // At n == sigma*gamma the dead zone and the shrinkage formula agree; at
    // n == 1 + sigma*gamma the shrinkage and projection formulas agree.
    const double sigma = 0.7, gamma = 0.9;
    const double sg = sigma * gamma;

    const VectorField at_low = prox_rstar(single_pixel(sg, 0.0), sigma, ScalarField(1, 1, gamma));
    CHECK(at_low.c1()(0, 0) == 0.0);
    const double shrink_low = (1.0 - sg / sg) * sg;
    CHECK(at_low.c1()(0, 0) == doctest::Approx(shrink_low).epsilon(1e-15));

    const double n_high = 1.0 + sg;
    const VectorField at_high =
        prox_rstar(single_pixel(n_high, 0.0), sigma, ScalarField(1, 1, gamma));
    const double projected = n_high / n_high;
    const double shrunk = (1.0 - sg / n_high) * n_high;
    CHECK(at_high.c1()(0, 0) == doctest::Approx(projected).epsilon(1e-14));
    CHECK(at_high.c1()(0, 0) == doctest::Approx(shrunk).epsilon(1e-14));
}

TEST_CASE("prox_rstar matches the golden-section oracle")
{
    std::mt19937_64 gen(99);
    const auto uniform = [&gen](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 1000; ++trial) {
        const double p1 = uniform(-3.0, 3.0), p2 = uniform(-3.0, 3.0);
        const double sigma = uniform(1e-3, 2.0), gamma = uniform(0.0, 2.0);
        const VectorField out = prox_rstar(single_pixel(p1, p2), sigma, ScalarField(1, 1, gamma));
        const double n = std::sqrt(p1 * p1 + p2 * p2);
        const double alpha = oracle::prox_rstar_scale(n, sigma * gamma);
        CHECK(std::abs(out.c1()(0, 0) - alpha * p1) <= 1e-8);
        CHECK(std::abs(out.c2()(0, 0) - alpha * p2) <= 1e-8);
    }
}

TEST_CASE("prox_rstar output norms never exceed one")
{
    const VectorField p(oracle::random_field(9, 9, 123, -30.0, 30.0),
                        oracle::random_field(9, 9, 124, -30.0, 30.0));
    const ScalarField gamma = oracle::random_field(9, 9, 125, 0.0, 2.0);
    const ScalarField norms = norm2_pointwise(prox_rstar(p, 0.8, gamma));
    for (std::size_t k = 0; k < norms.size(); ++k)
        CHECK(norms.data()[k] <= 1.0 + 1e-12);
}

TEST_CASE("prox_rstar is nonexpansive")
{
    const ScalarField gamma = oracle::random_field(8, 8, 321, 0.0, 1.5);
    for (std::uint64_t seed = 400; seed < 420; seed += 4) {
        const VectorField a(oracle::random_field(8, 8, seed, -4.0, 4.0),
                            oracle::random_field(8, 8, seed + 1, -4.0, 4.0));
        const VectorField b(oracle::random_field(8, 8, seed + 2, -4.0, 4.0),
                            oracle::random_field(8, 8, seed + 3, -4.0, 4.0));
        const VectorField pa = prox_rstar(a, 0.6, gamma);
        const VectorField pb = prox_rstar(b, 0.6, gamma);
        double d_out2 = 0.0, d_in2 = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double o1 = pa.c1().data()[k] - pb.c1().data()[k];
            const double o2 = pa.c2().data()[k] - pb.c2().data()[k];
            const double i1 = a.c1().data()[k] - b.c1().data()[k];
            const double i2 = a.c2().data()[k] - b.c2().data()[k];
            d_out2 += o1 * o1 + o2 * o2;
            d_in2 += i1 * i1 + i2 * i2;
        }
        CHECK(std::sqrt(d_out2) <= std::sqrt(d_in2) + 1e-10);
    }
}

TEST_CASE("prox_rstar with zero gamma is exactly the unit-ball projection")
{
    const VectorField p(oracle::random_field(7, 11, 99, -3.0, 3.0),
                        oracle::random_field(7, 11, 98, -3.0, 3.0));
    const VectorField a = prox_rstar(p, 0.77, ScalarField(7, 11, 0.0));
    const VectorField b = project_unit_ball(p, 1.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        CHECK(a.c1().data()[k] == b.c1().data()[k]);
        CHECK(a.c2().data()[k] == b.c2().data()[k]);
    }
}

TEST_CASE("a wrong branch constant in prox_rstar is caught by the oracle (mutation sanity)")
{
    // Same pointwise map with the projection threshold moved from
    // 1 + sigma*gamma to 2 + sigma*gamma.
    const auto broken_prox = [](const VectorField& p, double sigma, const ScalarField& g) {
        VectorField out(p.rows(), p.cols());
        for (std::size_t k = 0; k < p.size(); ++k) {
            const double a = p.c1().data()[k], b = p.c2().data()[k];
            const double n = std::sqrt(a * a + b * b);
            const double sg = sigma * g.data()[k];
            double scale;
            if (n <= sg)
                scale = 0.0;
            else if (n >= 2.0 + sg)
                scale = 1.0 / n;
            else
                scale = 1.0 - sg / n;
            out.c1().data()[k] = a * scale;
            out.c2().data()[k] = b * scale;
        }
        return out;
    };
    double worst = 0.0;
    std::mt19937_64 gen(777);
    const auto uniform = [&gen](double lo, double hi) {
        return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
    };
    for (int trial = 0; trial < 200; ++trial) {
        const double p1 = uniform(-3.0, 3.0), p2 = uniform(-3.0, 3.0);
        const double sigma = uniform(0.1, 2.0), gamma = uniform(0.0, 2.0);
        const VectorField out = broken_prox(single_pixel(p1, p2), sigma, ScalarField(1, 1, gamma));
        const double n = std::sqrt(p1 * p1 + p2 * p2);
        const double alpha = oracle::prox_rstar_scale(n, sigma * gamma);
        worst = std::max(worst, std::abs(out.c1()(0, 0) - alpha * p1));
        worst = std::max(worst, std::abs(out.c2()(0, 0) - alpha * p2));
    }
    CHECK(worst > 1e-3);
}

TEST_CASE("prox context overloads match the direct forms")
{
    ProxContext ctx;
    ctx.sigma = 0.6;
    ctx.tau = 0.4;
    ctx.gamma = oracle::random_field(5, 5, 640, 0.0, 2.0);
    ctx.delta = 12.0;
    ctx.f = oracle::random_field(5, 5, 641, 0.0, 255.0);

    const VectorField p(oracle::random_field(5, 5, 642, -3.0, 3.0),
                        oracle::random_field(5, 5, 643, -3.0, 3.0));
    const VectorField via_ctx = prox_rstar(p, ctx);
    const VectorField direct = prox_rstar(p, ctx.sigma, ctx.gamma);
    for (std::size_t k = 0; k < p.size(); ++k) {
        CHECK(via_ctx.c1().data()[k] == direct.c1().data()[k]);
        CHECK(via_ctx.c2().data()[k] == direct.c2().data()[k]);
    }

    const ScalarField u = oracle::random_field(5, 5, 644, -100.0, 400.0);
    const ScalarField a = prox_f(u, ctx);
    const ScalarField b = prox_f(u, ctx.f, ctx.delta);
    for (std::size_t k = 0; k < u.size(); ++k)
        CHECK(a.data()[k] == b.data()[k]);
}

TEST_CASE("prox_f keeps interior points and projects exterior ones")
{
    const ScalarField f = oracle::random_field(6, 6, 777, 0.0, 255.0);
    CHECK(l2_norm(prox_f(f, f, 3.0)) == l2_norm(f)); // u = f stays put

    ScalarField one(1, 1, 2.0);
    const ScalarField projected = prox_f(one, ScalarField(1, 1, 0.0), 1.0);
    CHECK(projected(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("prox_f lands on the sphere and is idempotent")
{
    const ScalarField f = oracle::random_field(10, 8, 800, 0.0, 255.0);
    const ScalarField u = oracle::random_field(10, 8, 801, -200.0, 500.0);
    const double delta = 40.0;
    const ScalarField once = prox_f(u, f, delta);
    double dist2 = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double d = once.data()[k] - f.data()[k];
        dist2 += d * d;
    }
    CHECK(std::abs(std::sqrt(dist2) - delta) <= 1e-10 * delta);

    const ScalarField twice = prox_f(once, f, delta);
    for (std::size_t k = 0; k < f.size(); ++k)
        CHECK(std::abs(twice.data()[k] - once.data()[k]) <= 1e-12 * 255.0);
}

TEST_CASE("project_unit_ball basics")
{
    VectorField interior = single_pixel(0.3, -0.2);
    const VectorField kept = project_unit_ball(interior, 1.0);
    CHECK(kept.c1()(0, 0) == 0.3);
    CHECK(kept.c2()(0, 0) == -0.2);

    const VectorField projected = project_unit_ball(single_pixel(3.0, 4.0), 1.0);
    CHECK(projected.c1()(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(projected.c2()(0, 0) == doctest::Approx(0.8).epsilon(1e-15));

    const VectorField p(oracle::random_field(9, 9, 900, -10.0, 10.0),
                        oracle::random_field(9, 9, 901, -10.0, 10.0));
    const double radius = 2.5;
    const ScalarField norms = norm2_pointwise(project_unit_ball(p, radius));
    for (std::size_t k = 0; k < norms.size(); ++k)
        CHECK(norms.data()[k] <= radius * (1.0 + 1e-12));
    CHECK_THROWS_AS(project_unit_ball(p, 0.0), std::invalid_argument);
}

TEST_CASE("project_tensor_ball basics")
{
    SymTensorField zero(2, 2, 0.0);
    const SymTensorField kept = project_tensor_ball(zero, 1.0);
    for (std::size_t k = 0; k < kept.size(); ++k)
        CHECK(kept.q11().data()[k] == 0.0);

    SymTensorField diag(1, 1);
    diag.q11()(0, 0) = 3.0;
    diag.q22()(0, 0) = 4.0;
    const SymTensorField projected = project_tensor_ball(diag, 1.0);
    CHECK(projected.q11()(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(projected.q22()(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(projected.q12()(0, 0) == 0.0);

    SymTensorField q(8, 8);
    q.q11() = oracle::random_field(8, 8, 910, -5.0, 5.0);
    q.q22() = oracle::random_field(8, 8, 911, -5.0, 5.0);
    q.q12() = oracle::random_field(8, 8, 912, -5.0, 5.0);
    const double radius = 1.25;
    const ScalarField norms = frobenius_pointwise(project_tensor_ball(q, radius));
    for (std::size_t k = 0; k < norms.size(); ++k)
        CHECK(norms.data()[k] <= radius * (1.0 + 1e-12));
}
