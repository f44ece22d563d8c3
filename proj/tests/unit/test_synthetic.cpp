#include "tvpwl/regularisers.hpp"
#include "tvpwl/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace tvpwl;

TEST_CASE("synthetic image stays within the intensity range")
{
    const ScalarField img = generate_synthetic(256, 256);
    CHECK(img.min_value() >= 0.0);
    CHECK(img.max_value() <= 255.0);
    CHECK(img.all_finite());
}

TEST_CASE("synthetic image is deterministic")
{
    const ScalarField a = generate_synthetic(128, 128);
    const ScalarField b = generate_synthetic(128, 128);
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(a.data()[k] == b.data()[k]);
}

TEST_CASE("synthetic image is piecewise affine with genuine jumps")
{
    const int n = 256;
    const ScalarField img = generate_synthetic(n, n);
    // Second differences vanish inside regions; only boundary pixels (a
    // vanishing fraction) may carry jumps.
    int flat = 0, total = 0, jumps = 0;
    for (int i = 1; i < n - 1; ++i) {
        for (int j = 1; j < n - 1; ++j) {
            const double d2x = img(i, j + 1) - 2.0 * img(i, j) + img(i, j - 1);
            const double d2y = img(i + 1, j) - 2.0 * img(i, j) + img(i - 1, j);
            const double magnitude = std::abs(d2x) + std::abs(d2y);
            ++total;
            if (magnitude <= 1e-9)
                ++flat;
            if (magnitude > 5.0)
                ++jumps;
        }
    }
    CHECK(flat >= static_cast<int>(0.85 * total));
    CHECK(jumps > 0);
    CHECK(tv(img) > 0.0);
}

TEST_CASE("synthetic generator rejects tiny sizes")
{
    CHECK_THROWS_AS(generate_synthetic(32, 256), std::invalid_argument);
    CHECK_THROWS_AS(generate_synthetic(256, 63), std::invalid_argument);
}
