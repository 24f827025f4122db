#include "gain/logistic.hpp"

#include <cmath>

#include "gain/losses.hpp"
#include "gain/mlp.hpp"
#include "gain/optimizer.hpp"

namespace gain {

std::vector<double> train_logistic(const Matrix& features,
                                   const std::vector<double>& labels,
                                   const LogisticConfig& config) {
    const std::size_t n = features.rows;
    const std::size_t d = features.cols;
    if (labels.size() != n) throw shape_error("train_logistic: label count mismatch");
    if (n < d) throw usage_error("train_logistic: need at least as many rows as features");

    std::size_t n_pos = 0;
    for (double y : labels) {
        if (y != 0.0 && y != 1.0) {
            throw validation_error("train_logistic: labels must be 0/1");
        }
        n_pos += y == 1.0;
    }
    if (n_pos == 0 || n_pos == n) {
        throw validation_error("train_logistic: labels contain a single class");
    }

    Mlp net;
    DenseLayer unit;
    unit.w = Matrix(d, 1);
    unit.b.assign(1, 0.0);
    unit.act = Activation::sigmoid;
    net.layers.push_back(std::move(unit));

    AdamState state = AdamState::zeros_like(net);
    const AdamHyper hp{config.learning_rate, 0.9, 0.999, 1e-8};
    const double inv_n = 1.0 / static_cast<double>(n);

    double prev_loss = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < config.max_iterations; ++it) {
        const ForwardTrace trace = forward(net, features);
        const Matrix& p = trace.output();

        double loss = 0.0;
        Matrix d_out(n, 1);
        for (std::size_t i = 0; i < n; ++i) {
            loss -= labels[i] * safe_log(p.v[i]) +
                    (1.0 - labels[i]) * safe_log(1.0 - p.v[i]);
            d_out.v[i] = inv_n * (-labels[i] * safe_log_grad(p.v[i]) +
                                  (1.0 - labels[i]) * safe_log_grad(1.0 - p.v[i]));
        }
        loss *= inv_n;

        Gradients grads = backward(net, trace, d_out);
        if (config.ridge > 0.0) {
            for (std::size_t j = 0; j < d; ++j) {
                const double w = net.layers[0].w.v[j];
                loss += 0.5 * config.ridge * w * w;
                grads.layers[0].w.v[j] += config.ridge * w;
            }
        }
        adam_step(net, grads, state, hp);

        if (std::abs(prev_loss - loss) < config.tolerance) break;
        prev_loss = loss;
    }

    std::vector<double> out(d + 1);
    for (std::size_t j = 0; j < d; ++j) out[j] = net.layers[0].w.v[j];
    out[d] = net.layers[0].b[0];
    return out;
}

std::vector<double> logistic_scores(const Matrix& features,
                                    const std::vector<double>& weights) {
    if (weights.size() != features.cols + 1) {
        throw shape_error("logistic_scores: weight vector length mismatch");
    }
    std::vector<double> scores(features.rows);
    for (std::size_t i = 0; i < features.rows; ++i) {
        double z = weights.back();
        const double* row = features.row(i);
        for (std::size_t j = 0; j < features.cols; ++j) z += row[j] * weights[j];
        scores[i] = sigmoid(z);
    }
    return scores;
}

}  // namespace gain
