#include "tvpwl/diffops.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace tvpwl {

GridSpacing::GridSpacing(double spacing) : h(spacing)
{
    if (!(spacing > 0.0))
        throw std::invalid_argument("GridSpacing: h must be positive");
}

VectorField grad(const ScalarField& u, GridSpacing spacing)
{
    const int M = u.rows(), N = u.cols();
    const double inv_h = 1.0 / spacing.h;
    VectorField out(M, N);
    ScalarField& d1 = out.c1();
    ScalarField& d2 = out.c2();
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            d1(i, j) = (i < M - 1) ? (u(i + 1, j) - u(i, j)) * inv_h : 0.0;
            d2(i, j) = (j < N - 1) ? (u(i, j + 1) - u(i, j)) * inv_h : 0.0;
        }
    }
    return out;
}

ScalarField div(const VectorField& p, GridSpacing spacing)
{
    const int M = p.rows(), N = p.cols();
    const double inv_h = 1.0 / spacing.h;
    const ScalarField& p1 = p.c1();
    const ScalarField& p2 = p.c2();
    ScalarField out(M, N);
    // Backward differences, first/last row and column as one-sided cases.
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            double s = 0.0;
            if (i < M - 1)
                s += p1(i, j);
            if (i > 0)
                s -= p1(i - 1, j);
            if (j < N - 1)
                s += p2(i, j);
            if (j > 0)
                s -= p2(i, j - 1);
            out(i, j) = s * inv_h;
        }
    }
    return out;
}

SymTensorField sym_grad(const VectorField& w, GridSpacing spacing)
{
    const int M = w.rows(), N = w.cols();
    const double inv_h = 1.0 / spacing.h;
    const ScalarField& w1 = w.c1();
    const ScalarField& w2 = w.c2();
    SymTensorField out(M, N);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            const double d1w1 = (i < M - 1) ? (w1(i + 1, j) - w1(i, j)) * inv_h : 0.0;
            const double d2w2 = (j < N - 1) ? (w2(i, j + 1) - w2(i, j)) * inv_h : 0.0;
            const double d2w1 = (j < N - 1) ? (w1(i, j + 1) - w1(i, j)) * inv_h : 0.0;
            const double d1w2 = (i < M - 1) ? (w2(i + 1, j) - w2(i, j)) * inv_h : 0.0;
            out.q11()(i, j) = d1w1;
            out.q22()(i, j) = d2w2;
            out.q12()(i, j) = 0.5 * (d2w1 + d1w2);
        }
    }
    return out;
}

namespace {

// Backward-difference divergence along one direction (dir 0 = rows, 1 = cols).
void accumulate_div_1d(const ScalarField& v, int dir, double inv_h, ScalarField& out)
{
    const int M = v.rows(), N = v.cols();
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N; ++j) {
            double s = 0.0;
            if (dir == 0) {
                if (i < M - 1)
                    s += v(i, j);
                if (i > 0)
                    s -= v(i - 1, j);
            } else {
                if (j < N - 1)
                    s += v(i, j);
                if (j > 0)
                    s -= v(i, j - 1);
            }
            out(i, j) += s * inv_h;
        }
    }
}

} // namespace

VectorField sym_div(const SymTensorField& q, GridSpacing spacing)
{
    const int M = q.rows(), N = q.cols();
    const double inv_h = 1.0 / spacing.h;
    VectorField out(M, N);
    accumulate_div_1d(q.q11(), 0, inv_h, out.c1());
    accumulate_div_1d(q.q12(), 1, inv_h, out.c1());
    accumulate_div_1d(q.q12(), 0, inv_h, out.c2());
    accumulate_div_1d(q.q22(), 1, inv_h, out.c2());
    return out;
}

namespace {

// Deterministic field in [-1,1) from a fixed generator; keeps opnorm reports
// reproducible across runs and platforms.
ScalarField seeded_field(int rows, int cols, std::uint64_t seed)
{
    std::mt19937_64 gen(seed);
    ScalarField out(rows, cols);
    double* o = out.data();
    for (std::size_t k = 0; k < out.size(); ++k) {
        const double u01 = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        o[k] = 2.0 * u01 - 1.0;
    }
    return out;
}

} // namespace

double opnorm_estimate(int rows, int cols, GridSpacing spacing, int iters)
{
    if (iters < 1)
        throw std::invalid_argument("opnorm_estimate: iters must be >= 1");
    ScalarField v = seeded_field(rows, cols, 42);
    double rayleigh = 0.0;
    for (int k = 0; k < iters; ++k) {
        VectorField g = grad(v, spacing);
        ScalarField av = div(g, spacing);
        for (std::size_t idx = 0; idx < av.size(); ++idx)
            av.data()[idx] = -av.data()[idx];
        const double vv = inner(v, v);
        if (vv == 0.0)
            return 0.0;
        rayleigh = inner(v, av) / vv;
        const double norm_av = l2_norm(av);
        if (norm_av == 0.0)
            return 0.0; // gradient vanishes identically (1x1 grid)
        for (std::size_t idx = 0; idx < av.size(); ++idx)
            av.data()[idx] /= norm_av;
        v = std::move(av);
    }
    return rayleigh;
}

double opnorm_estimate_tgv(int rows, int cols, GridSpacing spacing, int iters)
{
    if (iters < 1)
        throw std::invalid_argument("opnorm_estimate_tgv: iters must be >= 1");
    ScalarField u = seeded_field(rows, cols, 42);
    VectorField w(seeded_field(rows, cols, 43), seeded_field(rows, cols, 44));
    double rayleigh = 0.0;
    for (int k = 0; k < iters; ++k) {
        // K (u, w) = (grad u - w, sym_grad w)
        VectorField p = grad(u, spacing);
        for (std::size_t idx = 0; idx < p.size(); ++idx) {
            p.c1().data()[idx] -= w.c1().data()[idx];
            p.c2().data()[idx] -= w.c2().data()[idx];
        }
        SymTensorField q = sym_grad(w, spacing);
        // K^T K (u, w) = (-div p, -p - sym_div q)
        ScalarField au = div(p, spacing);
        for (std::size_t idx = 0; idx < au.size(); ++idx)
            au.data()[idx] = -au.data()[idx];
        VectorField aw = sym_div(q, spacing);
        for (std::size_t idx = 0; idx < aw.size(); ++idx) {
            aw.c1().data()[idx] = -p.c1().data()[idx] - aw.c1().data()[idx];
            aw.c2().data()[idx] = -p.c2().data()[idx] - aw.c2().data()[idx];
        }
        const double vv = inner(u, u) + inner(w, w);
        if (vv == 0.0)
            return 0.0;
        rayleigh = (inner(u, au) + inner(w, aw)) / vv;
        const double norm_av = std::sqrt(inner(au, au) + inner(aw, aw));
        if (norm_av == 0.0)
            return 0.0;
        for (std::size_t idx = 0; idx < au.size(); ++idx)
            au.data()[idx] /= norm_av;
        for (std::size_t idx = 0; idx < aw.size(); ++idx) {
            aw.c1().data()[idx] /= norm_av;
            aw.c2().data()[idx] /= norm_av;
        }
        u = std::move(au);
        w = std::move(aw);
    }
    return rayleigh;
}

} // namespace tvpwl
