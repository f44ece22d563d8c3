#pragma once

#include "tvpwl/field.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tvpwl {

namespace oracle {

/// Golden-section minimiser of a unimodal scalar function on [lo, hi],
/// evaluated in extended precision so the argmin is resolved well below the
/// sqrt(eps) floor of double-precision function comparisons.
long double golden_section_min(const std::function<long double(long double)>& f,
                               long double lo, long double hi, int iters = 160);

/// Numeric argmin of the pointwise dual-prox objective along the p_diamond
/// ray: minimises sigma_gamma*n*alpha + n^2*alpha^2/2 - n^2*alpha over
/// alpha in [0, 1/n] and returns the optimal scale factor (0 when n == 0).
/// Independent of the closed-form branch logic it is used to verify.
double prox_rstar_scale(double n, double sigma_gamma);

/// Deterministic pseudo-random field with entries in [lo, hi).
ScalarField random_field(int rows, int cols, std::uint64_t seed, double lo = -1.0,
                         double hi = 1.0);

/// Two-plane variant; the planes use seed and seed + 1.
VectorField random_vector_field(int rows, int cols, std::uint64_t seed, double lo = -1.0,
                                double hi = 1.0);

} // namespace oracle

namespace checks {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Desk-scale self-test: adjointness identities, operator-norm bound, prox
/// oracles, regulariser formulation equivalence, dual lower bound, sandwich
/// inequality, and feasibility/maximum principle on a small solve.
std::vector<CheckResult> run_all();

} // namespace checks

} // namespace tvpwl
