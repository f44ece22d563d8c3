#include "tvpwl/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace tvpwl {

VectorField prox_rstar(const VectorField& p_diamond, double sigma, const ScalarField& gamma)
{
    if (p_diamond.rows() != gamma.rows() || p_diamond.cols() != gamma.cols())
        throw std::invalid_argument("prox_rstar: gamma shape mismatch");
    const std::size_t n_px = p_diamond.size();
    const double* a = p_diamond.c1().data();
    const double* b = p_diamond.c2().data();
    const double* g = gamma.data();
    VectorField out(p_diamond.rows(), p_diamond.cols());
    double* o1 = out.c1().data();
    double* o2 = out.c2().data();
    for (std::size_t k = 0; k < n_px; ++k) {
        const double n = std::sqrt(a[k] * a[k] + b[k] * b[k]);
        const double sg = sigma * g[k];
        double scale;
        if (n <= sg) {
            scale = 0.0; // dead zone, covers n = 0
        } else if (n >= 1.0 + sg) {
            scale = 1.0 / n;
        } else {
            scale = 1.0 - sg / n;
        }
        o1[k] = a[k] * scale;
        o2[k] = b[k] * scale;
    }
    return out;
}

VectorField prox_rstar(const VectorField& p_diamond, const ProxContext& ctx)
{
    return prox_rstar(p_diamond, ctx.sigma, ctx.gamma);
}

ScalarField prox_f(const ScalarField& u_diamond, const ScalarField& f, double delta)
{
    if (!u_diamond.same_shape(f))
        throw std::invalid_argument("prox_f: shape mismatch");
    double dist2 = 0.0;
    const double* u = u_diamond.data();
    const double* fd = f.data();
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double d = u[k] - fd[k];
        dist2 += d * d;
    }
    const double dist = std::sqrt(dist2);
    if (dist <= delta)
        return u_diamond;
    const double scale = delta / dist;
    ScalarField out(f.rows(), f.cols());
    double* o = out.data();
    for (std::size_t k = 0; k < f.size(); ++k)
        o[k] = fd[k] + scale * (u[k] - fd[k]);
    return out;
}

ScalarField prox_f(const ScalarField& u_diamond, const ProxContext& ctx)
{
    return prox_f(u_diamond, ctx.f, ctx.delta);
}

VectorField project_unit_ball(const VectorField& p, double radius)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("project_unit_ball: radius must be positive");
    VectorField out(p.rows(), p.cols());
    const double* a = p.c1().data();
    const double* b = p.c2().data();
    double* o1 = out.c1().data();
    double* o2 = out.c2().data();
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double n = std::sqrt(a[k] * a[k] + b[k] * b[k]);
        const double scale = (n > radius) ? radius / n : 1.0;
        o1[k] = a[k] * scale;
        o2[k] = b[k] * scale;
    }
    return out;
}

SymTensorField project_tensor_ball(const SymTensorField& q, double radius)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("project_tensor_ball: radius must be positive");
    SymTensorField out(q.rows(), q.cols());
    const double* a = q.q11().data();
    const double* b = q.q22().data();
    const double* c = q.q12().data();
    double* o1 = out.q11().data();
    double* o2 = out.q22().data();
    double* o3 = out.q12().data();
    for (std::size_t k = 0; k < q.size(); ++k) {
        const double n = std::sqrt(a[k] * a[k] + b[k] * b[k] + 2.0 * c[k] * c[k]);
        const double scale = (n > radius) ? radius / n : 1.0;
        o1[k] = a[k] * scale;
        o2[k] = b[k] * scale;
        o3[k] = c[k] * scale;
    }
    return out;
}

} // namespace tvpwl
