#pragma once

#include <cstddef>
#include <vector>

#include "gain/matrix.hpp"
#include "gain/rng.hpp"

namespace gain {

enum class Activation { identity, relu, sigmoid };

// Numerically stable sigmoid, clamped into the open interval (0,1) so a
// sigmoid-terminated net never emits an exact 0 or 1 even for extreme
// pre-activations.
double sigmoid(double x);

struct DenseLayer {
    Matrix w;               // in_dim x out_dim
    std::vector<double> b;  // out_dim
    Activation act = Activation::identity;

    std::size_t in_dim() const { return w.rows; }
    std::size_t out_dim() const { return w.cols; }
};

struct Mlp {
    std::vector<DenseLayer> layers;

    std::size_t input_dim() const { return layers.front().in_dim(); }
    std::size_t output_dim() const { return layers.back().out_dim(); }
    std::size_t param_count() const;

    // Throws shape_error if adjacent layer dimensions disagree.
    void validate() const;
};

// Per-layer activation record produced by forward(); backward() consumes it.
struct ForwardTrace {
    Matrix input;
    std::vector<Matrix> pre;   // pre-activation, one per layer
    std::vector<Matrix> post;  // post-activation, one per layer

    const Matrix& output() const { return post.back(); }
};

struct LayerGrad {
    Matrix w;
    std::vector<double> b;
};

struct Gradients {
    std::vector<LayerGrad> layers;
    Matrix input;  // d loss / d batch input, for backprop through nets

    // Zero gradients shaped like the given net.
    static Gradients zeros_like(const Mlp& mlp);

    Gradients& add_scaled(const Gradients& other, double scale);
};

// Batch forward pass. batch is (n x input_dim); the trace ends in the
// (n x output_dim) output matrix.
ForwardTrace forward(const Mlp& mlp, const Matrix& batch);

// Backpropagates output_grad = d loss / d output through the trace.
// The trace must come from forward() on the same net.
Gradients backward(const Mlp& mlp, const ForwardTrace& trace,
                   const Matrix& output_grad);

// Glorot uniform weights on [-sqrt(6/(in+out)), +sqrt(6/(in+out))], zero bias.
DenseLayer xavier_layer(std::size_t in_dim, std::size_t out_dim,
                        Activation act, RngStream& rng);

// dims = {in, h1, ..., out}; hidden layers get hidden_act, last gets out_act.
Mlp make_mlp(const std::vector<std::size_t>& dims, Activation hidden_act,
             Activation out_act, RngStream& rng);

}  // namespace gain
