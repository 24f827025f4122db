#include "gain/mlp.hpp"

#include <cmath>
#include <limits>

#include "gain/kernels.hpp"

namespace gain {

double sigmoid(double x) {
    double s;
    if (x >= 0.0) {
        s = 1.0 / (1.0 + std::exp(-x));
    } else {
        const double e = std::exp(x);
        s = e / (1.0 + e);
    }
    constexpr double lo = std::numeric_limits<double>::min();
    const double hi = 1.0 - std::numeric_limits<double>::epsilon() / 2.0;
    if (s < lo) s = lo;
    if (s > hi) s = hi;
    return s;
}

namespace {

void apply_activation(Activation act, Matrix& m) {
    switch (act) {
        case Activation::identity:
            break;
        case Activation::relu:
            for (double& x : m.v) x = x > 0.0 ? x : 0.0;
            break;
        case Activation::sigmoid:
            for (double& x : m.v) x = sigmoid(x);
            break;
    }
}

// delta *= act'(pre), evaluated from pre/post activations.
void apply_activation_grad(Activation act, const Matrix& pre, const Matrix& post,
                           Matrix& delta) {
    switch (act) {
        case Activation::identity:
            break;
        case Activation::relu:
            for (std::size_t i = 0; i < delta.size(); ++i) {
                if (pre.v[i] <= 0.0) delta.v[i] = 0.0;
            }
            break;
        case Activation::sigmoid:
            for (std::size_t i = 0; i < delta.size(); ++i) {
                delta.v[i] *= post.v[i] * (1.0 - post.v[i]);
            }
            break;
    }
}

}  // namespace

std::size_t Mlp::param_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.w.size() + l.b.size();
    return n;
}

void Mlp::validate() const {
    if (layers.empty()) throw shape_error("mlp: no layers");
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        if (layers[i].out_dim() != layers[i + 1].in_dim()) {
            throw shape_error("mlp: layer " + std::to_string(i) + " output dim " +
                              std::to_string(layers[i].out_dim()) +
                              " != layer " + std::to_string(i + 1) +
                              " input dim " + std::to_string(layers[i + 1].in_dim()));
        }
    }
    for (const auto& l : layers) {
        if (l.b.size() != l.out_dim()) throw shape_error("mlp: bias size mismatch");
    }
}

ForwardTrace forward(const Mlp& mlp, const Matrix& batch) {
    mlp.validate();
    if (batch.cols != mlp.input_dim()) {
        throw shape_error("forward: batch cols " + std::to_string(batch.cols) +
                          " != input dim " + std::to_string(mlp.input_dim()));
    }
    ForwardTrace t;
    t.input = batch;
    t.pre.reserve(mlp.layers.size());
    t.post.reserve(mlp.layers.size());
    const Matrix* cur = &t.input;
    for (const auto& layer : mlp.layers) {
        Matrix z;
        kernels::matmul(*cur, layer.w, z);
        for (std::size_t r = 0; r < z.rows; ++r) {
            double* zr = z.row(r);
            for (std::size_t c = 0; c < z.cols; ++c) zr[c] += layer.b[c];
        }
        t.pre.push_back(z);
        apply_activation(layer.act, z);
        t.post.push_back(std::move(z));
        cur = &t.post.back();
    }
    return t;
}

Gradients backward(const Mlp& mlp, const ForwardTrace& trace,
                   const Matrix& output_grad) {
    const std::size_t nl = mlp.layers.size();
    if (trace.pre.size() != nl || trace.post.size() != nl) {
        throw shape_error("backward: trace does not match net");
    }
    if (!output_grad.same_shape(trace.output())) {
        throw shape_error("backward: output_grad shape mismatch");
    }

    Gradients g;
    g.layers.resize(nl);

    Matrix delta = output_grad;
    for (std::size_t li = nl; li-- > 0;) {
        const DenseLayer& layer = mlp.layers[li];
        if (delta.cols != layer.out_dim() || delta.rows != trace.input.rows ||
            !trace.pre[li].same_shape(delta) || !trace.post[li].same_shape(delta)) {
            throw shape_error("backward: stale activation record");
        }
        apply_activation_grad(layer.act, trace.pre[li], trace.post[li], delta);

        const Matrix& below = li == 0 ? trace.input : trace.post[li - 1];
        kernels::matmul_at_b(below, delta, g.layers[li].w);

        auto& db = g.layers[li].b;
        db.assign(layer.out_dim(), 0.0);
        for (std::size_t r = 0; r < delta.rows; ++r) {
            const double* dr = delta.row(r);
            for (std::size_t c = 0; c < delta.cols; ++c) db[c] += dr[c];
        }

        Matrix next;
        kernels::matmul_a_bt(delta, layer.w, next);
        delta = std::move(next);
    }
    g.input = std::move(delta);
    return g;
}

Gradients Gradients::zeros_like(const Mlp& mlp) {
    Gradients g;
    g.layers.resize(mlp.layers.size());
    for (std::size_t i = 0; i < mlp.layers.size(); ++i) {
        g.layers[i].w = Matrix(mlp.layers[i].w.rows, mlp.layers[i].w.cols);
        g.layers[i].b.assign(mlp.layers[i].b.size(), 0.0);
    }
    return g;
}

Gradients& Gradients::add_scaled(const Gradients& other, double scale) {
    for (std::size_t i = 0; i < layers.size(); ++i) {
        for (std::size_t j = 0; j < layers[i].w.size(); ++j) {
            layers[i].w.v[j] += scale * other.layers[i].w.v[j];
        }
        for (std::size_t j = 0; j < layers[i].b.size(); ++j) {
            layers[i].b[j] += scale * other.layers[i].b[j];
        }
    }
    return *this;
}

DenseLayer xavier_layer(std::size_t in_dim, std::size_t out_dim, Activation act,
                        RngStream& rng) {
    if (in_dim == 0 || out_dim == 0) throw shape_error("xavier_layer: zero dim");
    DenseLayer l;
    l.w = Matrix(in_dim, out_dim);
    const double bound = std::sqrt(6.0 / static_cast<double>(in_dim + out_dim));
    for (double& x : l.w.v) x = rng.uniform(-bound, bound);
    l.b.assign(out_dim, 0.0);
    l.act = act;
    return l;
}

Mlp make_mlp(const std::vector<std::size_t>& dims, Activation hidden_act,
             Activation out_act, RngStream& rng) {
    if (dims.size() < 2) throw shape_error("make_mlp: need at least 2 dims");
    Mlp mlp;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
        const bool last = i + 2 == dims.size();
        mlp.layers.push_back(
            xavier_layer(dims[i], dims[i + 1], last ? out_act : hidden_act, rng));
    }
    return mlp;
}

}  // namespace gain
