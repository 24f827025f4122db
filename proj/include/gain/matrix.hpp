#pragma once

#include <cstddef>
#include <vector>

#include "gain/error.hpp"

namespace gain {

// Dense row-major matrix of 64-bit reals. All numeric state in this
// project (batches, parameters, masks, gradients) lives in one of these.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> v;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), v(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return v[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return v[r * cols + c]; }

    double* row(std::size_t r) { return v.data() + r * cols; }
    const double* row(std::size_t r) const { return v.data() + r * cols; }

    std::size_t size() const { return v.size(); }

    bool same_shape(const Matrix& o) const {
        return rows == o.rows && cols == o.cols;
    }

    // True iff every entry is finite (no NaN, no infinity).
    bool all_finite() const;

    // Throws shape_error unless this matrix is rows x cols.
    void require_shape(std::size_t r, std::size_t c, const char* what) const;
};

}  // namespace gain
