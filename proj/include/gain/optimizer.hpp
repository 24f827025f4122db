#pragma once

#include <cstdint>
#include <vector>

#include "gain/mlp.hpp"

namespace gain {

struct AdamHyper {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

// First/second-moment accumulators shaped like the parameter set.
struct AdamState {
    struct LayerMoments {
        Matrix m_w, v_w;
        std::vector<double> m_b, v_b;
    };
    std::vector<LayerMoments> layers;
    std::uint64_t step = 0;

    static AdamState zeros_like(const Mlp& mlp);
};

// One bias-corrected Adam update. Increments state.step.
void adam_step(Mlp& mlp, const Gradients& grads, AdamState& state,
               const AdamHyper& hp);

// Plain SGD update (config-switch alternative to Adam).
void sgd_step(Mlp& mlp, const Gradients& grads, double lr);

}  // namespace gain
