#pragma once

#include <cstddef>
#include <vector>

namespace tvpwl {

/// Dense M x N grid of doubles in row-major order. Images, gamma maps and
/// residuals all live in this type; values are unrestricted reals.
class ScalarField {
public:
    ScalarField() = default;
    ScalarField(int rows, int cols, double value = 0.0);
    ScalarField(int rows, int cols, std::vector<double> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    bool same_shape(const ScalarField& other) const
    {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

    double min_value() const;
    double max_value() const;
    bool all_finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// M x N grid of 2-vectors stored as two co-indexed planes (gradients, dual p).
class VectorField {
public:
    VectorField() = default;
    VectorField(int rows, int cols, double value = 0.0)
        : c1_(rows, cols, value), c2_(rows, cols, value)
    {
    }
    VectorField(ScalarField c1, ScalarField c2);

    int rows() const { return c1_.rows(); }
    int cols() const { return c1_.cols(); }
    std::size_t size() const { return c1_.size(); }

    ScalarField& c1() { return c1_; }
    ScalarField& c2() { return c2_; }
    const ScalarField& c1() const { return c1_; }
    const ScalarField& c2() const { return c2_; }

    bool same_shape(const VectorField& other) const { return c1_.same_shape(other.c1_); }
    bool all_finite() const { return c1_.all_finite() && c2_.all_finite(); }

private:
    ScalarField c1_, c2_;
};

/// M x N grid of symmetric 2x2 tensors stored as three planes (q11, q22, q12).
/// The off-diagonal plane represents both mirror entries, so norms and inner
/// products count it twice.
class SymTensorField {
public:
    SymTensorField() = default;
    SymTensorField(int rows, int cols, double value = 0.0)
        : q11_(rows, cols, value), q22_(rows, cols, value), q12_(rows, cols, value)
    {
    }

    int rows() const { return q11_.rows(); }
    int cols() const { return q11_.cols(); }
    std::size_t size() const { return q11_.size(); }

    ScalarField& q11() { return q11_; }
    ScalarField& q22() { return q22_; }
    ScalarField& q12() { return q12_; }
    const ScalarField& q11() const { return q11_; }
    const ScalarField& q22() const { return q22_; }
    const ScalarField& q12() const { return q12_; }

    bool same_shape(const SymTensorField& other) const { return q11_.same_shape(other.q11_); }
    bool all_finite() const
    {
        return q11_.all_finite() && q22_.all_finite() && q12_.all_finite();
    }

private:
    ScalarField q11_, q22_, q12_;
};

/// Pointwise 2-norm sqrt(p1^2 + p2^2).
ScalarField norm2_pointwise(const VectorField& v);

/// Pointwise Frobenius norm sqrt(q11^2 + q22^2 + 2*q12^2).
ScalarField frobenius_pointwise(const SymTensorField& q);

// Inner products use a serial left-to-right, top-to-bottom reduction so that
// repeated runs are bit-identical.
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double inner(const SymTensorField& a, const SymTensorField& b);

double l2_norm(const ScalarField& a);
double l2_norm(const VectorField& a);

} // namespace tvpwl
