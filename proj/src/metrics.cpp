#include "gain/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gain/csv.hpp"

namespace gain {

std::optional<double> rmse_missing(const Matrix& ground_truth, const Matrix& imputed,
                                   const Matrix& mask) {
    if (!ground_truth.same_shape(imputed) || !ground_truth.same_shape(mask)) {
        throw shape_error("rmse_missing: shape mismatch");
    }
    double sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask.v[i] != 0.0) continue;
        const double e = imputed.v[i] - ground_truth.v[i];
        sq += e * e;
        ++count;
    }
    if (count == 0) return std::nullopt;
    return std::sqrt(sq / static_cast<double>(count));
}

namespace {

struct FeatureFill {
    double value = 0.0;
};

std::vector<FeatureFill> fill_values(const Dataset& reference) {
    std::vector<FeatureFill> fills(reference.d);
    for (std::size_t j = 0; j < reference.d; ++j) {
        double sum = 0.0;
        std::size_t ones = 0, zeros = 0, count = 0;
        for (std::size_t i = 0; i < reference.n; ++i) {
            if (reference.mask.at(i, j) == 0.0) continue;
            const double x = reference.values.at(i, j);
            sum += x;
            ++count;
            if (x == 1.0) ++ones;
            if (x == 0.0) ++zeros;
        }
        if (count == 0) {
            throw validation_error("mean_impute: feature '" +
                                   reference.features[j].name +
                                   "' has no observed cells");
        }
        if (reference.features[j].kind == FeatureKind::binary) {
            fills[j].value = ones >= zeros ? 1.0 : 0.0;
        } else {
            fills[j].value = sum / static_cast<double>(count);
        }
    }
    return fills;
}

}  // namespace

Dataset mean_impute_from(const Dataset& ds, const Dataset& reference) {
    if (reference.d != ds.d) throw shape_error("mean_impute_from: feature mismatch");
    const auto fills = fill_values(reference);
    Dataset out = ds;
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            if (ds.mask.at(i, j) != 0.0) continue;
            out.values.at(i, j) = fills[j].value;
            out.raw.at(i, j) = denormalize_cell(ds.features[j], fills[j].value);
            out.mask.at(i, j) = 1.0;
        }
    }
    return out;
}

Dataset mean_impute(const Dataset& ds) { return mean_impute_from(ds, ds); }

double auroc(const std::vector<double>& scores, const std::vector<double>& labels) {
    if (scores.size() != labels.size()) throw shape_error("auroc: length mismatch");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (double y : labels) {
        if (y != 0.0 && y != 1.0) throw validation_error("auroc: labels must be 0/1");
        n_pos += y == 1.0;
    }
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) {
        throw validation_error("auroc: both classes must be present");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // Average ranks over ties, then the Mann-Whitney U statistic.
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
        const double avg_rank = static_cast<double>(i + j + 2) / 2.0;  // 1-based
        for (std::size_t t = i; t <= j; ++t) {
            if (labels[order[t]] == 1.0) rank_sum_pos += avg_rank;
        }
        i = j + 1;
    }
    const double u = rank_sum_pos -
                     static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

Congeniality congeniality(const std::vector<double>& w_complete,
                          const std::vector<double>& w_imputed) {
    if (w_complete.size() != w_imputed.size()) {
        throw shape_error("congeniality: weight vector length mismatch");
    }
    Congeniality c;
    for (std::size_t i = 0; i < w_complete.size(); ++i) {
        const double d = w_complete[i] - w_imputed[i];
        c.l1 += std::abs(d);
        c.l2 += d * d;
    }
    c.l2 = std::sqrt(c.l2);
    return c;
}

Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.count = xs.size();
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    s.stddev = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
    return s;
}

namespace {

void put_summary(std::ostringstream& out, const std::string& key, const Summary& s) {
    out << key << ".mean=" << format_double(s.mean) << '\n'
        << key << ".std=" << format_double(s.stddev) << '\n'
        << key << ".runs=" << s.count << '\n';
}

}  // namespace

std::string MetricsReport::serialize() const {
    std::ostringstream out;
    out << "report.version=1\n";
    out << "seed=" << seed << '\n';
    put_summary(out, "rmse", rmse);
    put_summary(out, "rmse_baseline", rmse_baseline);
    if (rmse_pooled) put_summary(out, "rmse_pooled", *rmse_pooled);
    if (auroc) put_summary(out, "auroc", *auroc);
    if (congeniality_l1) put_summary(out, "congeniality_l1", *congeniality_l1);
    if (congeniality_l2) put_summary(out, "congeniality_l2", *congeniality_l2);
    if (congeniality_l1_baseline) {
        put_summary(out, "congeniality_l1_baseline", *congeniality_l1_baseline);
    }
    if (congeniality_l2_baseline) {
        put_summary(out, "congeniality_l2_baseline", *congeniality_l2_baseline);
    }
    for (const auto& [name, s] : per_variant) {
        put_summary(out, "variant." + name, s);
    }
    std::istringstream cfg(config_echo);
    std::string line;
    while (std::getline(cfg, line)) {
        if (!line.empty()) out << "config." << line << '\n';
    }
    return out.str();
}

namespace {

std::string fixed4(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

void table_row(std::ostringstream& out, const std::string& name, const Summary& s) {
    out << "  " << name;
    for (std::size_t i = name.size(); i < 28; ++i) out << ' ';
    out << fixed4(s.mean) << " +/- " << fixed4(s.stddev) << "  (" << s.count
        << " runs)\n";
}

}  // namespace

std::string MetricsReport::table() const {
    std::ostringstream out;
    out << "metric                        mean     +/- std\n";
    table_row(out, "rmse (gain)", rmse);
    table_row(out, "rmse (mean-impute)", rmse_baseline);
    if (rmse_pooled) table_row(out, "rmse (pooled draws)", *rmse_pooled);
    if (auroc) table_row(out, "auroc", *auroc);
    if (congeniality_l1) table_row(out, "congeniality l1 (gain)", *congeniality_l1);
    if (congeniality_l2) table_row(out, "congeniality l2 (gain)", *congeniality_l2);
    if (congeniality_l1_baseline) {
        table_row(out, "congeniality l1 (mean)", *congeniality_l1_baseline);
    }
    if (congeniality_l2_baseline) {
        table_row(out, "congeniality l2 (mean)", *congeniality_l2_baseline);
    }
    for (const auto& [name, s] : per_variant) {
        table_row(out, "rmse [" + name + "]", s);
    }
    return out.str();
}

}  // namespace gain
