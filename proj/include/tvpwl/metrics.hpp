#pragma once

#include "tvpwl/field.hpp"

#include <cstdint>

namespace tvpwl {

/// Gaussian noise specification: standard deviation is level * peak
/// (e.g. level 0.10 on peak 255 gives sigma 25.5 intensity units).
struct NoiseSpec {
    double level = 0.10;
    std::uint64_t seed = 0;
    double peak = 255.0;
};

/// Name of the generator used by add_gaussian_noise, echoed in reports.
inline constexpr const char* kNoiseRngName = "mt19937_64+box-muller";

struct NoisyImage {
    ScalarField f;      // u_gt + n, not clipped
    double delta = 0.0; // |f - u_gt|_2, the exact fidelity radius
};

/// Adds i.i.d. zero-mean Gaussian noise from a seeded mt19937_64 stream via
/// the Box-Muller transform. No clipping; delta is recomputed from the stored
/// f so that delta == l2_norm(f - u_gt) holds exactly.
NoisyImage add_gaussian_noise(const ScalarField& u_gt, const NoiseSpec& spec);

struct PsnrResult {
    double db = 0.0;
    bool infinite = false; // set when MSE == 0
};

PsnrResult psnr(const ScalarField& u, const ScalarField& u_ref, double peak = 255.0);

/// Mean SSIM over an 11x11 Gaussian window (std 1.5), C1 = (0.01*peak)^2,
/// C2 = (0.03*peak)^2, evaluated on the valid interior (no padding).
/// Requires both dimensions >= 11; symmetric in its image arguments.
double ssim(const ScalarField& u, const ScalarField& u_ref, double peak = 255.0);

} // namespace tvpwl
