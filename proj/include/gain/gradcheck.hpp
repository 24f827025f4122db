#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gain/mlp.hpp"

namespace gain {

// Central-difference gradient of an arbitrary scalar loss over every
// weight and bias of the net: (loss(p+eps) - loss(p-eps)) / (2 eps).
// Test oracle; deliberately independent of backward().
Gradients finite_diff_grad(const std::function<double(const Mlp&)>& loss_fn,
                           const Mlp& mlp, double epsilon);

// True when some relu pre-activation lies within `guard` of its kink,
// where a finite-difference comparison is meaningless.
bool near_relu_kink(const Mlp& mlp, const ForwardTrace& trace, double guard);

struct GradCheckReport {
    std::size_t cases = 0;
    std::size_t failed_cases = 0;
    std::size_t params_checked = 0;
    double max_rel_err = 0.0;
    std::vector<std::string> failures;

    bool passed() const { return failed_cases == 0; }
};

// Compares backward() against finite differences on `cases` random small
// nets (up to 3 layers, 16 units, 8-row batches) under squared-error and
// cross-entropy losses. A parameter participates when |grad| > grad_floor;
// it fails when the relative error exceeds rel_tol.
//
// corrupt_one injects a deliberate error into one analytic gradient entry
// per case; the suite must then fail (negative control for the CLI).
GradCheckReport run_mlp_gradient_suite(std::size_t cases, std::uint64_t seed,
                                       double rel_tol = 1e-4,
                                       double grad_floor = 1e-8,
                                       bool corrupt_one = false);

}  // namespace gain
