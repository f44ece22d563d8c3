#include "tvpwl/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tvpwl {

namespace {

struct Point {
    double x, y;
};

// Even-odd ray casting; boundaries resolve deterministically.
bool point_in_polygon(double x, double y, const std::vector<Point>& poly)
{
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t a = 0, b = n - 1; a < n; b = a++) {
        const bool crosses = (poly[a].y > y) != (poly[b].y > y);
        if (crosses) {
            const double x_cross = poly[b].x + (y - poly[b].y) / (poly[a].y - poly[b].y) *
                                                   (poly[a].x - poly[b].x);
            if (x < x_cross)
                inside = !inside;
        }
    }
    return inside;
}

struct Region {
    std::vector<Point> poly;
    // intensity = offset + sx * x + sy * y, in normalised coordinates
    double offset, sx, sy;
};

// Four-facet pyramid: steep affine ramps meeting in continuous creases along
// the diagonals, the classic hard case for first-order TV.
double pyramid(double x, double y)
{
    const double peak = 230.0, drop = 380.0;
    if (y <= x && y <= 1.0 - x)
        return peak - drop * y; // top facet
    if (y >= x && y >= 1.0 - x)
        return peak - drop * (1.0 - y); // bottom facet
    if (x <= 0.5)
        return peak - drop * x; // left facet
    return peak - drop * (1.0 - x); // right facet
}

} // namespace

ScalarField generate_synthetic(int rows, int cols)
{
    if (rows < 64 || cols < 64)
        throw std::invalid_argument("generate_synthetic: size must be at least 64x64");

    // Later regions paint over earlier ones; each carries its own ramp and
    // jumps against the pyramid underneath.
    const std::vector<Region> regions = {
        {{{0.15, 0.55}, {0.45, 0.55}, {0.45, 0.85}, {0.15, 0.85}}, -15.0, 300.0, 0.0},
        {{{0.55, 0.10}, {0.90, 0.15}, {0.75, 0.45}}, 275.0, 0.0, -350.0},
        {{{0.08, 0.10}, {0.30, 0.08}, {0.36, 0.26}, {0.16, 0.32}}, 245.0, 0.0, 0.0},
    };

    ScalarField img(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const double y = (i + 0.5) / rows;
        for (int j = 0; j < cols; ++j) {
            const double x = (j + 0.5) / cols;
            double value = pyramid(x, y);
            for (const Region& region : regions)
                if (point_in_polygon(x, y, region.poly))
                    value = region.offset + region.sx * x + region.sy * y;
            img(i, j) = value;
        }
    }
    return img;
}

} // namespace tvpwl
