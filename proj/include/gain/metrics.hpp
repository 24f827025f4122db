#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gain/dataset.hpp"

namespace gain {

// Root-mean-square error over missing cells only (mask = 0), on the
// normalized [0,1] scale. nullopt when nothing is missing.
std::optional<double> rmse_missing(const Matrix& ground_truth, const Matrix& imputed,
                                   const Matrix& mask);

// Missing continuous cells get the observed mean of their feature, missing
// binary cells the observed majority value. Errors on a fully missing
// feature.
Dataset mean_impute(const Dataset& ds);

// Fills missing cells of ds from per-feature statistics estimated on a
// reference dataset (train split). Same rules as mean_impute.
Dataset mean_impute_from(const Dataset& ds, const Dataset& reference);

// Mann-Whitney AUROC: probability that a uniformly chosen positive
// outscores a uniformly chosen negative, ties counted one half.
double auroc(const std::vector<double>& scores, const std::vector<double>& labels);

struct Congeniality {
    double l1 = 0.0;
    double l2 = 0.0;
};

Congeniality congeniality(const std::vector<double>& w_complete,
                          const std::vector<double>& w_imputed);

// Mean and standard deviation of one metric across runs.
struct Summary {
    double mean = 0.0;
    double stddev = 0.0;
    std::size_t count = 0;
};

Summary summarize(const std::vector<double>& xs);

struct MetricsReport {
    Summary rmse;                       // GAIN rmse_missing across runs
    Summary rmse_baseline;              // mean-imputation baseline
    // Multiple-imputation pooling: rmse of the across-draw mean imputation,
    // present when more than one draw was requested.
    std::optional<Summary> rmse_pooled;
    std::optional<Summary> auroc;       // post-imputation prediction
    std::optional<Summary> congeniality_l1;
    std::optional<Summary> congeniality_l2;
    std::optional<Summary> congeniality_l1_baseline;
    std::optional<Summary> congeniality_l2_baseline;
    // Ablation rows keyed by variant name, in Table-row order.
    std::map<std::string, Summary> per_variant;

    std::uint64_t seed = 0;
    std::string config_echo;  // flat key=value lines

    // Versioned key=value document; deterministic for a deterministic run.
    std::string serialize() const;
    // Aligned human-readable table.
    std::string table() const;
};

}  // namespace gain
