#include "gain/gradcheck.hpp"

#include <algorithm>
#include <cmath>

#include "gain/losses.hpp"

namespace gain {

Gradients finite_diff_grad(const std::function<double(const Mlp&)>& loss_fn,
                           const Mlp& mlp, double epsilon) {
    if (!(epsilon > 0.0)) throw usage_error("finite_diff_grad: epsilon must be > 0");
    Gradients g = Gradients::zeros_like(mlp);
    Mlp probe = mlp;
    const auto central = [&](double& param, double& out) {
        const double saved = param;
        param = saved + epsilon;
        const double up = loss_fn(probe);
        param = saved - epsilon;
        const double down = loss_fn(probe);
        param = saved;
        out = (up - down) / (2.0 * epsilon);
    };
    for (std::size_t li = 0; li < probe.layers.size(); ++li) {
        auto& layer = probe.layers[li];
        for (std::size_t j = 0; j < layer.w.size(); ++j) {
            central(layer.w.v[j], g.layers[li].w.v[j]);
        }
        for (std::size_t j = 0; j < layer.b.size(); ++j) {
            central(layer.b[j], g.layers[li].b[j]);
        }
    }
    return g;
}

namespace {

double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

// The central-difference oracle is only valid where the loss is locally
// smooth; with zero biases a dead input row puts the next layer exactly on
// the kink.
bool near_relu_kink(const Mlp& mlp, const ForwardTrace& trace, double guard) {
    for (std::size_t li = 0; li < mlp.layers.size(); ++li) {
        if (mlp.layers[li].act != Activation::relu) continue;
        for (double p : trace.pre[li].v) {
            if (std::abs(p) < guard) return true;
        }
    }
    return false;
}

GradCheckReport run_mlp_gradient_suite(std::size_t cases, std::uint64_t seed,
                                       double rel_tol, double grad_floor,
                                       bool corrupt_one) {
    GradCheckReport rep;
    RngStream root(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        RngStream rng = root.substream("case", c);

        const std::size_t n_layers = 1 + rng.uniform_index(3);
        std::vector<std::size_t> dims;
        dims.push_back(1 + rng.uniform_index(16));
        for (std::size_t l = 0; l < n_layers; ++l) dims.push_back(1 + rng.uniform_index(16));

        const bool sigmoid_out = rng.uniform() < 0.5;
        const Activation hidden =
            rng.uniform() < 0.5 ? Activation::relu : Activation::sigmoid;
        Mlp mlp = make_mlp(dims, hidden,
                           sigmoid_out ? Activation::sigmoid : Activation::identity,
                           rng);
        for (auto& layer : mlp.layers) {
            for (double& x : layer.b) x = rng.uniform(-0.3, 0.3);
        }

        const std::size_t batch_rows = 1 + rng.uniform_index(8);
        Matrix batch(batch_rows, dims.front());
        for (int tries = 0; tries < 50; ++tries) {
            for (double& x : batch.v) x = rng.uniform(-1.0, 1.0);
            if (!near_relu_kink(mlp, forward(mlp, batch), 1e-4)) break;
        }
        Matrix target(batch_rows, dims.back());
        for (double& x : target.v) {
            x = sigmoid_out ? static_cast<double>(rng.uniform() < 0.5)
                            : rng.uniform(-1.0, 1.0);
        }

        // Loss over the net output: cross-entropy for sigmoid heads,
        // squared error otherwise.
        const auto loss_of_output = [&](const Matrix& out, Matrix* d_out) {
            double loss = 0.0;
            if (d_out) *d_out = Matrix(out.rows, out.cols);
            for (std::size_t i = 0; i < out.size(); ++i) {
                if (sigmoid_out) {
                    loss -= target.v[i] * safe_log(out.v[i]) +
                            (1.0 - target.v[i]) * safe_log(1.0 - out.v[i]);
                    if (d_out) {
                        d_out->v[i] = -target.v[i] * safe_log_grad(out.v[i]) +
                                      (1.0 - target.v[i]) * safe_log_grad(1.0 - out.v[i]);
                    }
                } else {
                    const double e = out.v[i] - target.v[i];
                    loss += e * e;
                    if (d_out) d_out->v[i] = 2.0 * e;
                }
            }
            return loss;
        };

        ForwardTrace trace = forward(mlp, batch);
        Matrix d_out;
        loss_of_output(trace.output(), &d_out);
        Gradients analytic = backward(mlp, trace, d_out);
        if (corrupt_one && !analytic.layers.empty()) {
            analytic.layers[0].w.v[0] += 0.5;
        }

        Gradients numeric = finite_diff_grad(
            [&](const Mlp& m) {
                return loss_of_output(forward(m, batch).output(), nullptr);
            },
            mlp, 1e-5);

        bool case_failed = false;
        for (std::size_t li = 0; li < mlp.layers.size(); ++li) {
            const auto check = [&](double a, double n) {
                if (std::max(std::abs(a), std::abs(n)) <= grad_floor) return;
                rep.params_checked += 1;
                const double e = rel_err(a, n);
                rep.max_rel_err = std::max(rep.max_rel_err, e);
                if (e > rel_tol) case_failed = true;
            };
            for (std::size_t j = 0; j < analytic.layers[li].w.size(); ++j) {
                check(analytic.layers[li].w.v[j], numeric.layers[li].w.v[j]);
            }
            for (std::size_t j = 0; j < analytic.layers[li].b.size(); ++j) {
                check(analytic.layers[li].b[j], numeric.layers[li].b[j]);
            }
        }
        rep.cases += 1;
        if (case_failed) {
            rep.failed_cases += 1;
            rep.failures.push_back("case " + std::to_string(c) + ": rel err above " +
                                   std::to_string(rel_tol));
        }
    }
    return rep;
}

}  // namespace gain
