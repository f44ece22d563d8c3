#include "tvpwl/checks.hpp"
#include "tvpwl/prox.hpp"
#include "tvpwl/regularisers.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tvpwl;

namespace {

ScalarField row3(double a, double b, double c)
{
    return ScalarField(1, 3, std::vector<double>{a, b, c});
}

} // namespace

TEST_CASE("tv of a constant image is zero")
{
    CHECK(tv(ScalarField(8, 8, 42.0)) == 0.0);
}

TEST_CASE("tv of a 1x3 row by hand")
{
    CHECK(tv(row3(0.0, 1.0, 3.0)) == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("tv equals tvpwl with zero budget")
{
    const ScalarField u = oracle::random_field(12, 9, 60, 0.0, 255.0);
    const ScalarField zero(12, 9, 0.0);
    CHECK(tv(u) == doctest::Approx(tvpwl_closed_form(u, zero)).epsilon(1e-15));
    CHECK(tv(u) == doctest::Approx(tvpwl_primal(u, zero)).epsilon(1e-15));
}

TEST_CASE("tvpwl closed form on the 1x3 row")
{
    CHECK(tvpwl_closed_form(row3(0.0, 1.0, 3.0), ScalarField(1, 3, 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(tvpwl_primal(row3(0.0, 1.0, 3.0), ScalarField(1, 3, 1.0)) ==
          doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("a gamma dominating the gradient puts u in the kernel")
{
    const ScalarField u = oracle::random_field(9, 9, 61, 0.0, 10.0);
    const ScalarField budget(9, 9, 100.0); // above any |grad u| here
    CHECK(tvpwl_closed_form(u, budget) == 0.0);
    CHECK(tvpwl_primal(u, budget) == 0.0);
}

TEST_CASE("closed form and primal projection agree on random instances")
{
    std::uint64_t seed = 5100;
    for (int trial = 0; trial < 100; ++trial) {
        const int m = 1 + static_cast<int>((seed * 131) % 64);
        const int n = 1 + static_cast<int>((seed * 137 + 5) % 64);
        const ScalarField u = oracle::random_field(m, n, seed++, 0.0, 255.0);
        const ScalarField gamma = oracle::random_field(m, n, seed++, 0.0, 30.0);
        const double closed = tvpwl_closed_form(u, gamma);
        const double primal = tvpwl_primal(u, gamma);
        CHECK(std::abs(closed - primal) <= 1e-12 * (1.0 + closed));
    }
}

TEST_CASE("tvpwl_primal beats a brute-force grid search on a 1x2 image")
{
    // Single active gradient entry: minimise |v - g| over |g| <= gamma with a
    // 1e-3 grid on the two components of g.
    const double value = 1.7;
    ScalarField u(1, 2, std::vector<double>{0.0, value});
    const double gamma = 0.6;
    const double returned = tvpwl_primal(u, ScalarField(1, 2, gamma));

    double best = 1e300;
    const int steps = 1200;
    for (int a = -steps; a <= steps; ++a) {
        for (int b = -steps; b <= steps; ++b) {
            const double g1 = a * 1e-3, g2 = b * 1e-3;
            if (g1 * g1 + g2 * g2 > gamma * gamma)
                continue;
            const double r1 = 0.0 - g1, r2 = value - g2;
            best = std::min(best, std::sqrt(r1 * r1 + r2 * r2));
        }
    }
    CHECK(best >= returned - 1e-3);
    CHECK(returned == doctest::Approx(value - gamma).epsilon(1e-12));
}

TEST_CASE("dual value vanishes for phi = 0")
{
    const ScalarField u = oracle::random_field(7, 7, 70, 0.0, 255.0);
    const ScalarField gamma = oracle::random_field(7, 7, 71, 0.0, 10.0);
    const VectorField phi(7, 7, 0.0);
    CHECK(tvpwl_dual_value(u, gamma, phi) == 0.0);
    CHECK(tvpwl_dual_value(u, gamma, phi) <= tvpwl_closed_form(u, gamma));
}

TEST_CASE("dual value is tight for gamma = 0 with the clipped gradient sign-flipped")
{
    ScalarField u(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            u(i, j) = 3.0 * i + 2.0 * j + ((i + j) % 2 == 0 ? 0.25 : 0.0);
    const ScalarField zero(16, 16, 0.0);
    // <u, div phi> pairs with -<grad u, phi>, so the maximiser is the
    // negative of the radially clipped gradient.
    VectorField phi = project_unit_ball(grad(u), 1.0);
    for (std::size_t k = 0; k < phi.size(); ++k) {
        phi.c1().data()[k] = -phi.c1().data()[k];
        phi.c2().data()[k] = -phi.c2().data()[k];
    }
    const double dual = tvpwl_dual_value(u, zero, phi);
    const double exact = tv(u);
    CHECK(dual <= exact + 1e-9 * (1.0 + exact));
    CHECK(dual == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("random feasible phi never beat the closed form")
{
    std::uint64_t seed = 6000;
    const ScalarField u = oracle::random_field(15, 11, seed++, 0.0, 255.0);
    const ScalarField gamma = oracle::random_field(15, 11, seed++, 0.0, 15.0);
    const double closed = tvpwl_closed_form(u, gamma);
    for (int draw = 0; draw < 100; ++draw) {
        VectorField phi = oracle::random_vector_field(15, 11, seed, -2.0, 2.0);
        seed += 2;
        phi = project_unit_ball(phi, 1.0);
        CHECK(tvpwl_dual_value(u, gamma, phi) <= closed + 1e-9 * (1.0 + closed));
    }
}

TEST_CASE("infeasible phi is rejected")
{
    const ScalarField u(4, 4, 1.0);
    const ScalarField gamma(4, 4, 0.0);
    VectorField phi(4, 4, 0.0);
    phi.c1()(1, 1) = 1.5;
    CHECK_THROWS_AS(tvpwl_dual_value(u, gamma, phi), std::invalid_argument);
}

TEST_CASE("negative gamma entries are rejected")
{
    const ScalarField u(4, 4, 1.0);
    ScalarField gamma(4, 4, 1.0);
    gamma(2, 2) = -0.5;
    CHECK_THROWS_AS(tvpwl_closed_form(u, gamma), std::invalid_argument);
    CHECK_THROWS_AS(tvpwl_primal(u, gamma), std::invalid_argument);
}

TEST_CASE("sandwich collapses for zero gamma")
{
    const ScalarField u = oracle::random_field(9, 13, 80, 0.0, 255.0);
    const SandwichResult r = sandwich_check(u, ScalarField(9, 13, 0.0));
    CHECK(r.lower == r.value);
    CHECK(r.value == r.upper);
}

TEST_CASE("sandwich on a constant image")
{
    const ScalarField gamma = oracle::random_field(6, 6, 81, 0.0, 3.0);
    double mass = 0.0;
    for (std::size_t k = 0; k < gamma.size(); ++k)
        mass += gamma.data()[k];
    const SandwichResult r = sandwich_check(ScalarField(6, 6, 7.0), gamma);
    CHECK(r.lower == doctest::Approx(-mass).epsilon(1e-12));
    CHECK(r.value == 0.0);
    CHECK(r.upper == 0.0);
}

TEST_CASE("sandwich is ordered on random instances")
{
    std::uint64_t seed = 7000;
    for (int trial = 0; trial < 100; ++trial) {
        const ScalarField u = oracle::random_field(14, 10, seed++, 0.0, 255.0);
        const ScalarField gamma = oracle::random_field(14, 10, seed++, 0.0, 20.0);
        const SandwichResult r = sandwich_check(u, gamma);
        const double scale = std::abs(r.upper) + 1.0;
        CHECK(r.lower <= r.value + 1e-10 * scale);
        CHECK(r.value <= r.upper + 1e-10 * scale);
    }
}

TEST_CASE("tvpwl is monotone in gamma")
{
    const ScalarField u = oracle::random_field(11, 11, 90, 0.0, 255.0);
    const ScalarField g1 = oracle::random_field(11, 11, 91, 0.0, 10.0);
    ScalarField g2 = g1;
    for (std::size_t k = 0; k < g2.size(); ++k)
        g2.data()[k] += 2.5; // g2 >= g1 pointwise
    CHECK(tvpwl_closed_form(u, g2) <= tvpwl_closed_form(u, g1));
}

TEST_CASE("tagged evaluation routes through the right formulation")
{
    const ScalarField u = oracle::random_field(12, 12, 97, 0.0, 255.0);
    const ScalarField gamma = oracle::random_field(12, 12, 98, 0.0, 15.0);

    const RegulariserValue closed = evaluate_tvpwl(u, gamma, Formulation::closed_form);
    const RegulariserValue primal = evaluate_tvpwl(u, gamma, Formulation::primal_projection);
    const RegulariserValue dual = evaluate_tvpwl(u, gamma, Formulation::dual_lower_bound);

    CHECK(closed.formulation == Formulation::closed_form);
    CHECK(primal.formulation == Formulation::primal_projection);
    CHECK(dual.formulation == Formulation::dual_lower_bound);
    CHECK(closed.value == tvpwl_closed_form(u, gamma));
    CHECK(primal.value == tvpwl_primal(u, gamma));
    CHECK(dual.value >= 0.0);
    CHECK(dual.value <= closed.value + 1e-9 * (1.0 + closed.value));

    // tight at gamma = 0
    const ScalarField zero(12, 12, 0.0);
    const RegulariserValue dual0 = evaluate_tvpwl(u, zero, Formulation::dual_lower_bound);
    CHECK(dual0.value == doctest::Approx(tv(u)).epsilon(1e-9));
}

TEST_CASE("tvpwl is one-homogeneous under joint scaling")
{
    const ScalarField u = oracle::random_field(10, 10, 95, 0.0, 100.0);
    const ScalarField gamma = oracle::random_field(10, 10, 96, 0.0, 10.0);
    const double c = 3.75;
    ScalarField cu(10, 10), cg(10, 10);
    for (std::size_t k = 0; k < u.size(); ++k) {
        cu.data()[k] = c * u.data()[k];
        cg.data()[k] = c * gamma.data()[k];
    }
    const double scaled = tvpwl_closed_form(cu, cg);
    const double base = tvpwl_closed_form(u, gamma);
    CHECK(scaled == doctest::Approx(c * base).epsilon(1e-12));
}
