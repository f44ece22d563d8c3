#pragma once

#include "tvpwl/field.hpp"

namespace tvpwl {

/// Pixel spacing of the grid (default 1, the usual imaging convention).
struct GridSpacing {
    double h = 1.0;

    GridSpacing() = default;
    explicit GridSpacing(double spacing);
};

/// Forward-difference gradient with Neumann boundary conditions:
/// (d1 u)(i,j) = (u(i+1,j) - u(i,j))/h for i < M-1, 0 on the last row,
/// and likewise for (d2 u) along columns.
VectorField grad(const ScalarField& u, GridSpacing spacing = {});

/// Backward-difference divergence, the negative adjoint of grad:
/// <grad u, p> + <u, div p> = 0 holds exactly for all u, p.
ScalarField div(const VectorField& p, GridSpacing spacing = {});

/// Symmetrised gradient E(w) = (J w + J w^T)/2 of a vector field, using the
/// same forward-difference/Neumann stencils componentwise.
SymTensorField sym_grad(const VectorField& w, GridSpacing spacing = {});

/// Negative adjoint of sym_grad under the tensor inner product (q12 counted
/// twice): <sym_grad w, q> + <w, sym_div q> = 0.
VectorField sym_div(const SymTensorField& q, GridSpacing spacing = {});

/// Power-iteration estimate of the squared operator norm of grad on an M x N
/// grid. Returns the Rayleigh quotient after `iters` applications of
/// -div(grad(.)), which increases monotonically towards ||grad||^2 and never
/// exceeds the bound 8/h^2. Seeded deterministically.
double opnorm_estimate(int rows, int cols, GridSpacing spacing, int iters);

/// Same power-iteration estimate for the stacked operator
/// (u, w) -> (grad u - w, sym_grad w) used by the second-order solver.
double opnorm_estimate_tgv(int rows, int cols, GridSpacing spacing, int iters);

} // namespace tvpwl
