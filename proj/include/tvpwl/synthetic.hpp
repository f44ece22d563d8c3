#pragma once

#include "tvpwl/field.hpp"

namespace tvpwl {

/// Deterministic piecewise-affine test image in [0,255]: a handful of
/// polygonal regions, each carrying its own affine intensity ramp, painted
/// over an affine background with jump discontinuities at every region
/// boundary. Geometry is fixed in normalised coordinates, so the same scene
/// is produced at any size. Requires rows, cols >= 64.
ScalarField generate_synthetic(int rows, int cols);

} // namespace tvpwl
