#include "tvpwl/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tvpwl {

ScalarField::ScalarField(int rows, int cols, double value)
    : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, value)
{
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("ScalarField: rows and cols must be positive");
}

ScalarField::ScalarField(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data))
{
    if (rows <= 0 || cols <= 0)
        throw std::invalid_argument("ScalarField: rows and cols must be positive");
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("ScalarField: data length must equal rows*cols");
}

double ScalarField::min_value() const
{
    return *std::min_element(data_.begin(), data_.end());
}

double ScalarField::max_value() const
{
    return *std::max_element(data_.begin(), data_.end());
}

bool ScalarField::all_finite() const
{
    for (double v : data_)
        if (!std::isfinite(v))
            return false;
    return true;
}

VectorField::VectorField(ScalarField c1, ScalarField c2)
    : c1_(std::move(c1)), c2_(std::move(c2))
{
    if (!c1_.same_shape(c2_))
        throw std::invalid_argument("VectorField: component planes must share shape");
}

ScalarField norm2_pointwise(const VectorField& v)
{
    ScalarField out(v.rows(), v.cols());
    const double* a = v.c1().data();
    const double* b = v.c2().data();
    double* o = out.data();
    for (std::size_t k = 0; k < v.size(); ++k)
        o[k] = std::sqrt(a[k] * a[k] + b[k] * b[k]);
    return out;
}

ScalarField frobenius_pointwise(const SymTensorField& q)
{
    ScalarField out(q.rows(), q.cols());
    const double* a = q.q11().data();
    const double* b = q.q22().data();
    const double* c = q.q12().data();
    double* o = out.data();
    for (std::size_t k = 0; k < q.size(); ++k)
        o[k] = std::sqrt(a[k] * a[k] + b[k] * b[k] + 2.0 * c[k] * c[k]);
    return out;
}

double inner(const ScalarField& a, const ScalarField& b)
{
    if (!a.same_shape(b))
        throw std::invalid_argument("inner: shape mismatch");
    const double* x = a.data();
    const double* y = b.data();
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += x[k] * y[k];
    return s;
}

double inner(const VectorField& a, const VectorField& b)
{
    if (!a.same_shape(b))
        throw std::invalid_argument("inner: shape mismatch");
    return inner(a.c1(), b.c1()) + inner(a.c2(), b.c2());
}

double inner(const SymTensorField& a, const SymTensorField& b)
{
    if (!a.same_shape(b))
        throw std::invalid_argument("inner: shape mismatch");
    // q12 stands for the symmetric off-diagonal pair, hence the factor 2.
    return inner(a.q11(), b.q11()) + inner(a.q22(), b.q22()) + 2.0 * inner(a.q12(), b.q12());
}

double l2_norm(const ScalarField& a)
{
    return std::sqrt(inner(a, a));
}

double l2_norm(const VectorField& a)
{
    return std::sqrt(inner(a, a));
}

} // namespace tvpwl
