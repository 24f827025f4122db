#pragma once

#include "gain/matrix.hpp"

namespace gain::kernels {

// Matrix products used by the dense-layer forward/backward passes.
//
// Each kernel exists twice: a plain serial reference under
// kernels::serial, and an OpenMP row-parallel version that the library
// calls. Every output element is produced by exactly one thread with a
// fixed inner summation order, so the parallel results are bitwise equal
// to the serial ones regardless of thread count. Tests assert exact
// equality; the bench_kernels target compares wall time.

namespace serial {

// out = a * b                      (n x k) * (k x m) -> (n x m)
void matmul(const Matrix& a, const Matrix& b, Matrix& out);
// out = a^T * b                    (n x k)^T * (n x m) -> (k x m)
void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out);
// out = a * b^T                    (n x k) * (m x k)^T -> (n x m)
void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out);

}  // namespace serial

void matmul(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_at_b(const Matrix& a, const Matrix& b, Matrix& out);
void matmul_a_bt(const Matrix& a, const Matrix& b, Matrix& out);

}  // namespace gain::kernels
