#include "tvpwl/metrics.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

namespace tvpwl {

namespace {

// Gaussian deviates via Box-Muller over the top 53 bits of mt19937_64 draws.
// std::normal_distribution is implementation-defined, so we keep the mapping
// from seed to noise explicit and stable.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

    double next()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01(); // (0, 1], keeps log() finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(angle);
        have_spare_ = true;
        return r * std::cos(angle);
    }

private:
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace

NoisyImage add_gaussian_noise(const ScalarField& u_gt, const NoiseSpec& spec)
{
    if (!(spec.level > 0.0) || !(spec.peak > 0.0))
        throw std::invalid_argument("add_gaussian_noise: level and peak must be positive");
    const double sigma = spec.level * spec.peak;
    GaussianStream stream(spec.seed);

    NoisyImage out;
    out.f = ScalarField(u_gt.rows(), u_gt.cols());
    for (std::size_t k = 0; k < u_gt.size(); ++k)
        out.f.data()[k] = u_gt.data()[k] + sigma * stream.next();
    double sum2 = 0.0;
    for (std::size_t k = 0; k < u_gt.size(); ++k) {
        const double d = out.f.data()[k] - u_gt.data()[k];
        sum2 += d * d;
    }
    out.delta = std::sqrt(sum2);
    return out;
}

PsnrResult psnr(const ScalarField& u, const ScalarField& u_ref, double peak)
{
    if (!u.same_shape(u_ref))
        throw std::invalid_argument("psnr: shape mismatch");
    double sum2 = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double d = u.data()[k] - u_ref.data()[k];
        sum2 += d * d;
    }
    const double mse = sum2 / static_cast<double>(u.size());
    if (mse == 0.0)
        return {0.0, true};
    return {10.0 * std::log10(peak * peak / mse), false};
}

namespace {

constexpr int kSsimWindow = 11;
constexpr double kSsimSigma = 1.5;

// Separable valid-mode convolution with the normalised SSIM window.
ScalarField window_filter(const ScalarField& img, const std::vector<double>& kernel)
{
    const int r = static_cast<int>(kernel.size() / 2);
    const int M = img.rows(), N = img.cols();
    ScalarField tmp(M, N - 2 * r);
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < N - 2 * r; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < kernel.size(); ++t)
                s += kernel[t] * img(i, j + static_cast<int>(t));
            tmp(i, j) = s;
        }
    }
    ScalarField out(M - 2 * r, N - 2 * r);
    for (int i = 0; i < M - 2 * r; ++i) {
        for (int j = 0; j < N - 2 * r; ++j) {
            double s = 0.0;
            for (std::size_t t = 0; t < kernel.size(); ++t)
                s += kernel[t] * tmp(i + static_cast<int>(t), j);
            out(i, j) = s;
        }
    }
    return out;
}

} // namespace

double ssim(const ScalarField& u, const ScalarField& u_ref, double peak)
{
    if (!u.same_shape(u_ref))
        throw std::invalid_argument("ssim: shape mismatch");
    if (u.rows() < kSsimWindow || u.cols() < kSsimWindow)
        throw std::invalid_argument("ssim: image smaller than the 11x11 window");

    std::vector<double> kernel(kSsimWindow);
    double ksum = 0.0;
    for (int t = 0; t < kSsimWindow; ++t) {
        const double x = t - (kSsimWindow - 1) / 2.0;
        kernel[t] = std::exp(-0.5 * (x / kSsimSigma) * (x / kSsimSigma));
        ksum += kernel[t];
    }
    for (double& v : kernel)
        v /= ksum;

    const int M = u.rows(), N = u.cols();
    ScalarField uu(M, N), vv(M, N), uv(M, N);
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double a = u.data()[k];
        const double b = u_ref.data()[k];
        uu.data()[k] = a * a;
        vv.data()[k] = b * b;
        uv.data()[k] = a * b;
    }

    const ScalarField mu1 = window_filter(u, kernel);
    const ScalarField mu2 = window_filter(u_ref, kernel);
    const ScalarField s11 = window_filter(uu, kernel);
    const ScalarField s22 = window_filter(vv, kernel);
    const ScalarField s12 = window_filter(uv, kernel);

    const double c1 = (0.01 * peak) * (0.01 * peak);
    const double c2 = (0.03 * peak) * (0.03 * peak);

    double total = 0.0;
    for (std::size_t k = 0; k < mu1.size(); ++k) {
        const double m1 = mu1.data()[k], m2 = mu2.data()[k];
        const double var1 = s11.data()[k] - m1 * m1;
        const double var2 = s22.data()[k] - m2 * m2;
        const double cov = s12.data()[k] - m1 * m2;
        const double num = (2.0 * m1 * m2 + c1) * (2.0 * cov + c2);
        const double den = (m1 * m1 + m2 * m2 + c1) * (var1 + var2 + c2);
        total += num / den;
    }
    return total / static_cast<double>(mu1.size());
}

} // namespace tvpwl
