#pragma once

#include <cstdint>

#include "gain/gradcheck.hpp"

namespace gain {

// Finite-difference check of the full training-step gradients: the
// discriminator objective with respect to discriminator parameters, and
// the composite generator objective (through completion, discrimination
// and reconstruction) with respect to generator parameters, on random tiny
// nets and batches.
GradCheckReport run_gain_gradient_suite(std::size_t cases, std::uint64_t seed,
                                        double rel_tol = 1e-4,
                                        double grad_floor = 1e-8,
                                        bool corrupt_one = false);

}  // namespace gain
