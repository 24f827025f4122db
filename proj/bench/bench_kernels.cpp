// Serial reference vs OpenMP kernels, plus one end-to-end training
// comparison. Shapes mirror real training traffic (mini-batch x 2d dense
// layers) plus a larger case where parallelism actually pays.

#include <chrono>
#include <cstdio>
#include <omp.h>

#include "gain/dataset.hpp"
#include "gain/gain.hpp"
#include "gain/kernels.hpp"
#include "gain/rng.hpp"

using gain::Matrix;

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, gain::RngStream& rng) {
    Matrix m(r, c);
    for (double& x : m.v) x = rng.uniform(-1.0, 1.0);
    return m;
}

template <typename F>
double time_ms(std::size_t reps, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < reps; ++i) f();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count() /
           static_cast<double>(reps);
}

void bench_shape(std::size_t n, std::size_t k, std::size_t m, std::size_t reps) {
    gain::RngStream rng(1);
    const Matrix a = random_matrix(n, k, rng);
    const Matrix b = random_matrix(k, m, rng);
    Matrix out;

    const double serial = time_ms(reps, [&] { gain::kernels::serial::matmul(a, b, out); });
    const double parallel = time_ms(reps, [&] { gain::kernels::matmul(a, b, out); });
    std::printf("matmul %4zux%-4zu * %4zux%-4zu  serial %8.3f ms  omp %8.3f ms  speedup %.2fx\n",
                n, k, k, m, serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());

    // Training-sized shapes (Breast-scale batches) and larger ones.
    bench_shape(128, 60, 30, 200);
    bench_shape(128, 256, 256, 50);
    bench_shape(569, 60, 30, 100);
    bench_shape(1024, 512, 512, 10);

    // End-to-end: a short training run dominated by the kernels above.
    gain::RngStream data_rng(7);
    gain::Dataset ds = gain::synthesize_correlated(2000, 0.9, data_rng);
    gain::RngStream mask_rng(8);
    ds = gain::introduce_mcar(ds, 0.3, mask_rng);

    gain::TrainConfig cfg;
    cfg.iterations = 500;
    cfg.hidden = {64, 64};
    const double train_ms = time_ms(1, [&] { (void)gain::train(ds, cfg); });
    std::printf("train 500 iters (n=2000, hidden 64x64): %.1f ms\n", train_ms);
    return 0;
}
