#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gain/gain.hpp"
#include "gain/logistic.hpp"
#include "gain/metrics.hpp"

namespace gain {

// Experiment driver configuration shared by the evaluate and ablate
// pipelines. Independent runs (seed x fold, or variant x seed) execute in
// parallel; every run derives its own named random streams from the base
// seed, so parallel and serial execution produce identical reports.
struct HarnessConfig {
    TrainConfig train;
    double mcar_rate = 0.2;
    bool exact_mask = false;
    std::size_t folds = 5;
    std::size_t seeds = 3;
    std::size_t n_draws = 1;            // imputation draws; metrics use draw 0
    std::vector<std::string> mask_columns;  // empty = every feature column
    std::string label_column;           // empty = no prediction metrics
    LogisticConfig logistic;
};

// Full cross-validated experiment on a completely observed dataset:
// per seed, inject MCAR missingness, split into folds, train on the train
// rows, impute the held-out rows, and score RMSE (plus AUROC and
// congeniality when a label column is named) against the mean-imputation
// baseline.
MetricsReport cv_evaluate(const Dataset& complete, const HarnessConfig& config);

// Table-style ablation on an already masked dataset (ground truth
// required): trains every variant for every seed on the full data and
// reports mean +/- std of transductive rmse_missing per variant.
MetricsReport run_ablation(const Dataset& masked, const TrainConfig& base_config,
                           const std::vector<std::uint64_t>& seeds);

// Names of the five ablation variants in report order.
const std::vector<GainVariant>& ablation_variants();

}  // namespace gain
