#pragma once

#include <string>
#include <vector>

#include "gain/dataset.hpp"

namespace gain {

// CSV contract: UTF-8, comma-separated, mandatory header row, one numeric
// cell per field; a field equal to missing_token (default empty) is a
// missing cell. Values are written in shortest round-trip form, so
// write(load(x)) is idempotent and observed cells survive pipelines
// byte-identically.

Dataset load_csv(const std::string& path, const std::string& missing_token = "",
                 const std::vector<FeatureKind>& kinds = {});

void save_csv(const Dataset& ds, const std::string& path,
              const std::string& missing_token = "");

// Companion 0/1 grid with identical shape and header.
void save_mask_csv(const Dataset& ds, const std::string& path);

// Shortest decimal string that parses back to exactly this double.
std::string format_double(double x);

}  // namespace gain
