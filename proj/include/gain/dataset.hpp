#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gain/matrix.hpp"
#include "gain/rng.hpp"

namespace gain {

enum class FeatureKind { continuous, binary };

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::continuous;
    double observed_min = 0.0;
    double observed_max = 1.0;
    bool constant = false;  // continuous feature with a single observed value
};

// Per-feature (min, max) of the affine map onto [0,1].
struct NormalizationParams {
    std::vector<std::pair<double, double>> min_max;
};

// Tabular dataset. `values` lives on the normalized [0,1] scale; `raw`
// keeps the original units so observed cells round-trip through CSV
// exactly. A mask entry of 0 means the cell is missing: the paired value
// entries hold the sentinel 0 and must never be read as data.
struct Dataset {
    std::size_t n = 0;
    std::size_t d = 0;
    Matrix values;  // normalized, n x d
    Matrix raw;     // original units, n x d
    Matrix mask;    // {0,1}, n x d
    std::vector<FeatureSpec> features;
    std::optional<Matrix> truth;      // normalized pre-masking values
    std::optional<Matrix> truth_raw;  // original-unit pre-masking values

    bool fully_observed() const;
    std::size_t missing_count() const;
    NormalizationParams normalization() const;
};

// Affine map of one cell onto [0,1] (identity for binary features;
// constant continuous features map to 0.5).
double normalize_cell(const FeatureSpec& f, double raw_value);
double denormalize_cell(const FeatureSpec& f, double norm_value);

// Builds a Dataset from raw values + mask: computes per-feature observed
// min/max (observed cells only), validates binary columns, normalizes.
// kinds may be empty, in which case a column whose observed values are all
// in {0,1} is binary and anything else is continuous.
Dataset make_dataset(Matrix raw, Matrix mask, std::vector<std::string> names,
                     const std::vector<FeatureKind>& kinds = {});

// Independently masks each selected cell with probability rate (MCAR).
// Requires a fully observed input; stores pre-masking values as ground
// truth. columns empty = all columns. exact_count replaces the per-cell
// Bernoulli draw with exactly round(rate * cells) masked cells.
Dataset introduce_mcar(const Dataset& ds, double rate, RngStream& rng,
                       const std::vector<std::size_t>& columns = {},
                       bool exact_count = false);

struct FoldSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// k disjoint test folds covering all rows, sizes differing by at most 1.
std::vector<FoldSplit> split_folds(const Dataset& ds, std::size_t k,
                                   RngStream& rng);

Dataset select_rows(const Dataset& ds, const std::vector<std::size_t>& rows);
Dataset select_columns(const Dataset& ds, const std::vector<std::size_t>& cols);

// Column index by feature name; throws usage_error when absent.
std::size_t column_index(const Dataset& ds, const std::string& name);

// Two-feature dataset: f2 = rho * f1 + sqrt(1 - rho^2) * noise, both
// standardized and then min-max normalized. Fully observed.
Dataset synthesize_correlated(std::size_t n, double rho, RngStream& rng);

}  // namespace gain
