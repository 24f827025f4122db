#include "gain/kernels.hpp"

namespace gain::kernels {

namespace {

void check_matmul(std::size_t a_inner, std::size_t b_inner, const char* what) {
    if (a_inner != b_inner) {
        throw shape_error(std::string(what) + ": inner dimensions " +
                          std::to_string(a_inner) + " and " +
                          std::to_string(b_inner) + " do not match");
    }
}

// Below this many multiply-adds the OpenMP fork/join overhead dominates.
constexpr std::size_t kParallelCutoff = 262144;

}  // namespace

namespace serial {

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
    check_matmul(a.cols, b.rows, "matmul");
    out = Matrix(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* o = out.row(i);
        const double* ar = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = ar[k];
            const double* br = b.row(k);
            for (std::size_t j = 0; j < b.cols; ++j) o[j] += aik * br[j];
        }
    }
}

void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out) {
    check_matmul(a.rows, b.rows, "matmul_at_b");
    out = Matrix(a.cols, b.cols);
    for (std::size_t i = 0; i < a.cols; ++i) {
        double* o = out.row(i);
        for (std::size_t r = 0; r < a.rows; ++r) {
            const double ari = a.at(r, i);
            const double* br = b.row(r);
            for (std::size_t j = 0; j < b.cols; ++j) o[j] += ari * br[j];
        }
    }
}

void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out) {
    check_matmul(a.cols, b.cols, "matmul_a_bt");
    out = Matrix(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* o = out.row(i);
        const double* ar = a.row(i);
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* br = b.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) acc += ar[k] * br[k];
            o[j] = acc;
        }
    }
}

}  // namespace serial

void matmul(const Matrix& a, const Matrix& b, Matrix& out) {
    check_matmul(a.cols, b.rows, "matmul");
    if (a.rows * a.cols * b.cols < kParallelCutoff) {
        serial::matmul(a, b, out);
        return;
    }
    out = Matrix(a.rows, b.cols);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(a.rows); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* o = out.row(i);
        const double* ar = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = ar[k];
            const double* br = b.row(k);
            for (std::size_t j = 0; j < b.cols; ++j) o[j] += aik * br[j];
        }
    }
}

void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out) {
    check_matmul(a.rows, b.rows, "matmul_at_b");
    if (a.rows * a.cols * b.cols < kParallelCutoff) {
        serial::matmul_at_b(a, b, out);
        return;
    }
    out = Matrix(a.cols, b.cols);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(a.cols); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* o = out.row(i);
        for (std::size_t r = 0; r < a.rows; ++r) {
            const double ari = a.at(r, i);
            const double* br = b.row(r);
            for (std::size_t j = 0; j < b.cols; ++j) o[j] += ari * br[j];
        }
    }
}

void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out) {
    check_matmul(a.cols, b.cols, "matmul_a_bt");
    if (a.rows * a.cols * b.rows < kParallelCutoff) {
        serial::matmul_a_bt(a, b, out);
        return;
    }
    out = Matrix(a.rows, b.rows);
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(a.rows); ++ii) {
        const auto i = static_cast<std::size_t>(ii);
        double* o = out.row(i);
        const double* ar = a.row(i);
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* br = b.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) acc += ar[k] * br[k];
            o[j] = acc;
        }
    }
}

}  // namespace gain::kernels
