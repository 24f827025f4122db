#include "gain/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gain {

bool Dataset::fully_observed() const {
    for (double m : mask.v) {
        if (m == 0.0) return false;
    }
    return true;
}

std::size_t Dataset::missing_count() const {
    std::size_t c = 0;
    for (double m : mask.v) c += m == 0.0;
    return c;
}

NormalizationParams Dataset::normalization() const {
    NormalizationParams p;
    p.min_max.reserve(features.size());
    for (const auto& f : features) p.min_max.emplace_back(f.observed_min, f.observed_max);
    return p;
}

double normalize_cell(const FeatureSpec& f, double raw_value) {
    if (f.kind == FeatureKind::binary) return raw_value;
    if (f.constant || f.observed_max == f.observed_min) return 0.5;
    return (raw_value - f.observed_min) / (f.observed_max - f.observed_min);
}

double denormalize_cell(const FeatureSpec& f, double norm_value) {
    if (f.kind == FeatureKind::binary) return norm_value;
    if (f.constant || f.observed_max == f.observed_min) return f.observed_min;
    return f.observed_min + norm_value * (f.observed_max - f.observed_min);
}

Dataset make_dataset(Matrix raw, Matrix mask, std::vector<std::string> names,
                     const std::vector<FeatureKind>& kinds) {
    if (!raw.same_shape(mask)) throw shape_error("make_dataset: raw/mask shape mismatch");
    if (names.size() != raw.cols) throw shape_error("make_dataset: name count mismatch");
    if (!kinds.empty() && kinds.size() != raw.cols) {
        throw shape_error("make_dataset: kind count mismatch");
    }

    Dataset ds;
    ds.n = raw.rows;
    ds.d = raw.cols;
    ds.features.resize(ds.d);

    for (std::size_t j = 0; j < ds.d; ++j) {
        FeatureSpec& f = ds.features[j];
        f.name = std::move(names[j]);

        bool any = false;
        bool all01 = true;
        double lo = 0.0, hi = 0.0;
        for (std::size_t i = 0; i < ds.n; ++i) {
            if (mask.at(i, j) == 0.0) continue;
            const double x = raw.at(i, j);
            if (!std::isfinite(x)) {
                throw validation_error("make_dataset: non-finite value in column " + f.name);
            }
            if (!any) {
                lo = hi = x;
                any = true;
            } else {
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            if (x != 0.0 && x != 1.0) all01 = false;
        }

        f.kind = kinds.empty() ? (any && all01 ? FeatureKind::binary
                                               : FeatureKind::continuous)
                               : kinds[j];
        if (f.kind == FeatureKind::binary) {
            if (any && !all01) {
                throw validation_error("make_dataset: binary column " + f.name +
                                       " has a value outside {0,1}");
            }
            f.observed_min = 0.0;
            f.observed_max = 1.0;
        } else {
            f.observed_min = any ? lo : 0.0;
            f.observed_max = any ? hi : 0.0;
            f.constant = !any || lo == hi;
        }
    }

    ds.values = Matrix(ds.n, ds.d);
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            if (mask.at(i, j) == 0.0) {
                raw.at(i, j) = 0.0;  // sentinel
            } else {
                ds.values.at(i, j) = normalize_cell(ds.features[j], raw.at(i, j));
            }
        }
    }
    ds.raw = std::move(raw);
    ds.mask = std::move(mask);
    return ds;
}

Dataset introduce_mcar(const Dataset& ds, double rate, RngStream& rng,
                       const std::vector<std::size_t>& columns, bool exact_count) {
    if (!(rate >= 0.0 && rate < 1.0)) {
        throw usage_error("introduce_mcar: rate must be in [0,1)");
    }
    if (!ds.fully_observed()) {
        throw usage_error("introduce_mcar: input dataset already has missing cells");
    }
    std::vector<std::size_t> cols = columns;
    if (cols.empty()) {
        cols.resize(ds.d);
        std::iota(cols.begin(), cols.end(), 0);
    }
    for (std::size_t c : cols) {
        if (c >= ds.d) throw usage_error("introduce_mcar: column index out of range");
    }

    Dataset out = ds;
    out.truth = ds.values;
    out.truth_raw = ds.raw;

    std::vector<std::pair<std::size_t, std::size_t>> hit;
    if (exact_count) {
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        cells.reserve(ds.n * cols.size());
        for (std::size_t i = 0; i < ds.n; ++i) {
            for (std::size_t c : cols) cells.emplace_back(i, c);
        }
        const auto want = static_cast<std::size_t>(
            std::llround(rate * static_cast<double>(cells.size())));
        for (std::size_t i = 0; i < want; ++i) {
            const std::size_t j = i + rng.uniform_index(cells.size() - i);
            std::swap(cells[i], cells[j]);
            hit.push_back(cells[i]);
        }
    } else {
        for (std::size_t i = 0; i < ds.n; ++i) {
            for (std::size_t c : cols) {
                if (rng.uniform() < rate) hit.emplace_back(i, c);
            }
        }
    }
    for (auto [i, j] : hit) {
        out.mask.at(i, j) = 0.0;
        out.values.at(i, j) = 0.0;
        out.raw.at(i, j) = 0.0;
    }
    return out;
}

std::vector<FoldSplit> split_folds(const Dataset& ds, std::size_t k, RngStream& rng) {
    if (k < 2) throw usage_error("split_folds: k must be >= 2");
    if (k > ds.n) throw usage_error("split_folds: k exceeds row count");

    std::vector<std::size_t> order(ds.n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t j = i + rng.uniform_index(order.size() - i);
        std::swap(order[i], order[j]);
    }

    std::vector<FoldSplit> folds(k);
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        folds[pos % k].test.push_back(order[pos]);
    }
    for (std::size_t f = 0; f < k; ++f) {
        std::sort(folds[f].test.begin(), folds[f].test.end());
        for (std::size_t g = 0; g < k; ++g) {
            if (g == f) continue;
            folds[f].train.insert(folds[f].train.end(), folds[g].test.begin(),
                                  folds[g].test.end());
        }
        std::sort(folds[f].train.begin(), folds[f].train.end());
    }
    return folds;
}

namespace {

Matrix take_rows(const Matrix& m, const std::vector<std::size_t>& rows) {
    Matrix out(rows.size(), m.cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const double* src = m.row(rows[i]);
        std::copy(src, src + m.cols, out.row(i));
    }
    return out;
}

Matrix take_cols(const Matrix& m, const std::vector<std::size_t>& cols) {
    Matrix out(m.rows, cols.size());
    for (std::size_t i = 0; i < m.rows; ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) {
            out.at(i, j) = m.at(i, cols[j]);
        }
    }
    return out;
}

}  // namespace

Dataset select_rows(const Dataset& ds, const std::vector<std::size_t>& rows) {
    for (std::size_t r : rows) {
        if (r >= ds.n) throw usage_error("select_rows: index out of range");
    }
    Dataset out;
    out.n = rows.size();
    out.d = ds.d;
    out.features = ds.features;
    out.values = take_rows(ds.values, rows);
    out.raw = take_rows(ds.raw, rows);
    out.mask = take_rows(ds.mask, rows);
    if (ds.truth) out.truth = take_rows(*ds.truth, rows);
    if (ds.truth_raw) out.truth_raw = take_rows(*ds.truth_raw, rows);
    return out;
}

Dataset select_columns(const Dataset& ds, const std::vector<std::size_t>& cols) {
    for (std::size_t c : cols) {
        if (c >= ds.d) throw usage_error("select_columns: index out of range");
    }
    Dataset out;
    out.n = ds.n;
    out.d = cols.size();
    out.features.reserve(cols.size());
    for (std::size_t c : cols) out.features.push_back(ds.features[c]);
    out.values = take_cols(ds.values, cols);
    out.raw = take_cols(ds.raw, cols);
    out.mask = take_cols(ds.mask, cols);
    if (ds.truth) out.truth = take_cols(*ds.truth, cols);
    if (ds.truth_raw) out.truth_raw = take_cols(*ds.truth_raw, cols);
    return out;
}

std::size_t column_index(const Dataset& ds, const std::string& name) {
    for (std::size_t j = 0; j < ds.features.size(); ++j) {
        if (ds.features[j].name == name) return j;
    }
    throw usage_error("no column named '" + name + "'");
}

Dataset synthesize_correlated(std::size_t n, double rho, RngStream& rng) {
    if (n < 1) throw usage_error("synthesize_correlated: n must be >= 1");
    if (!(rho >= -1.0 && rho <= 1.0)) {
        throw usage_error("synthesize_correlated: rho must be in [-1,1]");
    }
    Matrix raw(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        const double f1 = rng.normal();
        const double noise = rng.normal();
        raw.at(i, 0) = f1;
        raw.at(i, 1) = rho * f1 + std::sqrt(1.0 - rho * rho) * noise;
    }
    // Standardize each feature before handing off to min-max normalization.
    for (std::size_t j = 0; j < 2; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += raw.at(i, j);
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = raw.at(i, j) - mean;
            var += dx * dx;
        }
        var /= static_cast<double>(n);
        const double sd = var > 0.0 ? std::sqrt(var) : 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            raw.at(i, j) = (raw.at(i, j) - mean) / sd;
        }
    }
    Matrix mask(n, 2, 1.0);
    return make_dataset(std::move(raw), std::move(mask), {"f1", "f2"},
                        {FeatureKind::continuous, FeatureKind::continuous});
}

}  // namespace gain
