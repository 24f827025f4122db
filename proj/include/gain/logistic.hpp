#pragma once

#include <vector>

#include "gain/matrix.hpp"

namespace gain {

struct LogisticConfig {
    double learning_rate = 0.05;
    std::size_t max_iterations = 5000;
    double tolerance = 1e-9;  // stop when the loss change falls below this
    double ridge = 0.0;       // optional L2 penalty for ill-conditioned folds
};

// Full-batch logistic regression (one sigmoid unit, zero-initialized,
// Adam). Returns d weights followed by the bias. Deterministic.
std::vector<double> train_logistic(const Matrix& features,
                                   const std::vector<double>& labels,
                                   const LogisticConfig& config = {});

// Scores = sigmoid(features * w + bias) for a fitted weight vector.
std::vector<double> logistic_scores(const Matrix& features,
                                    const std::vector<double>& weights);

}  // namespace gain
