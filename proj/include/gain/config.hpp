#pragma once

#include <string>
#include <vector>

#include "gain/harness.hpp"

namespace gain {

// Flat key=value run configuration ('#' starts a comment). Unknown keys
// are rejected. Every field has a default except the dataset path.
struct RunConfig {
    std::string dataset;
    std::string missing_token;
    double rate = 0.2;
    std::size_t folds = 5;
    std::size_t seeds = 3;
    std::size_t draws = 1;
    std::string out_dir = ".";
    bool exact_mask = false;
    std::string label_col;
    std::vector<std::string> mask_columns;  // empty = all columns
    double ridge = 0.0;

    TrainConfig train;

    // Applies "key=value"; throws validation_error on unknown keys or
    // unparseable values.
    void set(const std::string& key, const std::string& value);

    // Parses a config file and applies every assignment in order.
    void load_file(const std::string& path);

    // Deterministic key=value echo of every field.
    std::string echo() const;

    HarnessConfig harness() const;
};

}  // namespace gain
