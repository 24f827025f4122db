#include "gain/optimizer.hpp"

#include <cmath>

namespace gain {

AdamState AdamState::zeros_like(const Mlp& mlp) {
    AdamState s;
    s.layers.resize(mlp.layers.size());
    for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
        const auto& l = mlp.layers[i];
        s.layers[i].m_w = Matrix(l.w.rows, l.w.cols);
        s.layers[i].v_w = Matrix(l.w.rows, l.w.cols);
        s.layers[i].m_b.assign(l.b.size(), 0.0);
        s.layers[i].v_b.assign(l.b.size(), 0.0);
    }
    return s;
}

namespace {

void adam_update(double* p, const double* g, double* m, double* v, std::size_t n,
                 const AdamHyper& hp, double bc1, double bc2) {
    for (std::size_t i = 0; i < n; ++i) {
        m[i] = hp.beta1 * m[i] + (1.0 - hp.beta1) * g[i];
        v[i] = hp.beta2 * v[i] + (1.0 - hp.beta2) * g[i] * g[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        p[i] -= hp.lr * mhat / (std::sqrt(vhat) + hp.eps);
    }
}

}  // namespace

void adam_step(Mlp& mlp, const Gradients& grads, AdamState& state,
               const AdamHyper& hp) {
    if (grads.layers.size() != mlp.layers.size() ||
        state.layers.size() != mlp.layers.size()) {
        throw shape_error("adam_step: gradient/state layer count mismatch");
    }
    state.step += 1;
    const double bc1 = 1.0 - std::pow(hp.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(hp.beta2, static_cast<double>(state.step));
    for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
        auto& l = mlp.layers[i];
        const auto& g = grads.layers[i];
        auto& s = state.layers[i];
        if (!g.w.same_shape(l.w) || g.b.size() != l.b.size()) {
            throw shape_error("adam_step: gradient shape mismatch at layer " +
                              std::to_string(i));
        }
        adam_update(l.w.v.data(), g.w.v.data(), s.m_w.v.data(), s.v_w.v.data(),
                    l.w.size(), hp, bc1, bc2);
        adam_update(l.b.data(), g.b.data(), s.m_b.data(), s.v_b.data(), l.b.size(),
                    hp, bc1, bc2);
    }
}

void sgd_step(Mlp& mlp, const Gradients& grads, double lr) {
    if (grads.layers.size() != mlp.layers.size()) {
        throw shape_error("sgd_step: gradient layer count mismatch");
    }
    for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
        auto& l = mlp.layers[i];
        const auto& g = grads.layers[i];
        if (!g.w.same_shape(l.w) || g.b.size() != l.b.size()) {
            throw shape_error("sgd_step: gradient shape mismatch at layer " +
                              std::to_string(i));
        }
        for (std::size_t j = 0; j < l.w.size(); ++j) l.w.v[j] -= lr * g.w.v[j];
        for (std::size_t j = 0; j < l.b.size(); ++j) l.b[j] -= lr * g.b[j];
    }
}

}  // namespace gain
