#include "gain/harness.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace gain {

namespace {

std::string train_config_echo(const TrainConfig& c, const HarnessConfig* h) {
    std::ostringstream out;
    out << "k_d=" << c.k_d << "\nk_g=" << c.k_g << "\nalpha=" << c.alpha
        << "\niterations=" << c.iterations << "\nlearning_rate=" << c.learning_rate
        << "\nnoise_high=" << c.noise_high << "\nhidden=";
    for (std::size_t i = 0; i < c.hidden.size(); ++i) {
        out << (i ? "," : "") << c.hidden[i];
    }
    out << "\nseed=" << c.seed << "\nvariant=" << to_string(c.variant)
        << "\noptimizer=" << (c.optimizer == OptimizerKind::adam ? "adam" : "sgd")
        << '\n';
    if (h) {
        out << "rate=" << h->mcar_rate << "\nfolds=" << h->folds
            << "\nseeds=" << h->seeds << "\ndraws=" << h->n_draws << '\n';
    }
    return out.str();
}

struct LabeledData {
    Dataset features;
    std::vector<double> labels;
};

LabeledData split_label(const Dataset& ds, const std::string& label_column) {
    LabeledData out;
    if (label_column.empty()) {
        out.features = ds;
        return out;
    }
    const std::size_t label_idx = column_index(ds, label_column);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < ds.d; ++j) {
        if (j != label_idx) keep.push_back(j);
    }
    out.features = select_columns(ds, keep);
    out.labels.resize(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (ds.mask.at(i, label_idx) == 0.0) {
            throw usage_error("label column '" + label_column + "' has missing cells");
        }
        const double y = ds.raw.at(i, label_idx);
        if (y != 0.0 && y != 1.0) {
            throw usage_error("label column '" + label_column + "' is not binary");
        }
        out.labels[i] = y;
    }
    return out;
}

std::vector<double> subset(const std::vector<double>& xs,
                           const std::vector<std::size_t>& idx) {
    std::vector<double> out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) out[i] = xs[idx[i]];
    return out;
}

// Accumulated squared error over missing cells of one fold.
struct SqErr {
    double sum = 0.0;
    std::size_t count = 0;

    void add(const Matrix& truth, const Matrix& imputed, const Matrix& mask) {
        for (std::size_t i = 0; i < mask.size(); ++i) {
            if (mask.v[i] != 0.0) continue;
            const double e = imputed.v[i] - truth.v[i];
            sum += e * e;
            ++count;
        }
    }
    double rmse() const {
        return count == 0 ? 0.0 : std::sqrt(sum / static_cast<double>(count));
    }
};

}  // namespace

const std::vector<GainVariant>& ablation_variants() {
    static const std::vector<GainVariant> variants{
        GainVariant::full, GainVariant::no_lg, GainVariant::no_lm,
        GainVariant::no_hint, GainVariant::no_hint_no_lm};
    return variants;
}

MetricsReport cv_evaluate(const Dataset& complete, const HarnessConfig& config) {
    if (!complete.fully_observed()) {
        throw usage_error("evaluate: input dataset must be fully observed "
                          "(ground truth is required)");
    }
    if (config.folds < 2) throw usage_error("evaluate: need at least 2 folds");
    if (config.seeds < 1) throw usage_error("evaluate: need at least 1 seed");

    const LabeledData data = split_label(complete, config.label_column);
    const Dataset& features = data.features;
    const bool with_label = !config.label_column.empty();

    std::vector<std::size_t> mask_cols;
    for (const auto& name : config.mask_columns) {
        mask_cols.push_back(column_index(features, name));
    }

    const RngStream root(config.train.seed);

    struct RunResult {
        SqErr gain, baseline, pooled;
        double fold_auroc = 0.0;
        std::string error;
    };

    const std::size_t n_runs = config.seeds * config.folds;
    std::vector<RunResult> results(n_runs);

    // Per-seed masked data, folds, and imputation assembly slots are built
    // serially; the training runs are the parallel units.
    std::vector<Dataset> masked(config.seeds);
    std::vector<std::vector<FoldSplit>> folds(config.seeds);
    std::vector<Matrix> assembled_gain(config.seeds);
    std::vector<Matrix> assembled_base(config.seeds);
    for (std::size_t s = 0; s < config.seeds; ++s) {
        RngStream mask_rng = root.substream("mcar", s);
        masked[s] = introduce_mcar(features, config.mcar_rate, mask_rng, mask_cols,
                                   config.exact_mask);
        RngStream fold_rng = root.substream("folds", s);
        folds[s] = split_folds(masked[s], config.folds, fold_rng);
        assembled_gain[s] = Matrix(features.n, features.d);
        assembled_base[s] = Matrix(features.n, features.d);
    }

#pragma omp parallel for schedule(dynamic)
    for (long long run = 0; run < static_cast<long long>(n_runs); ++run) {
        const std::size_t s = static_cast<std::size_t>(run) / config.folds;
        const std::size_t f = static_cast<std::size_t>(run) % config.folds;
        RunResult& r = results[run];
        try {
            const FoldSplit& split = folds[s][f];
            const Dataset train_ds = select_rows(masked[s], split.train);
            const Dataset test_ds = select_rows(masked[s], split.test);

            TrainConfig cfg = config.train;
            cfg.seed = root.substream("train", s, f).seed();
            const GainModel model = train(train_ds, cfg);

            RngStream imp_rng = root.substream("impute", s, f);
            const auto draws = impute(model, test_ds, imp_rng, config.n_draws);
            const Dataset& test_imp = draws.front();
            r.gain.add(*test_ds.truth, test_imp.values, test_ds.mask);

            if (config.n_draws > 1) {
                Matrix pooled = draws[0].values;
                for (std::size_t t = 1; t < draws.size(); ++t) {
                    for (std::size_t i = 0; i < pooled.size(); ++i) {
                        pooled.v[i] += draws[t].values.v[i];
                    }
                }
                for (double& x : pooled.v) x /= static_cast<double>(draws.size());
                r.pooled.add(*test_ds.truth, pooled, test_ds.mask);
            }

            const Dataset test_base = mean_impute_from(test_ds, train_ds);
            r.baseline.add(*test_ds.truth, test_base.values, test_ds.mask);

            for (std::size_t i = 0; i < split.test.size(); ++i) {
                const std::size_t row = split.test[i];
                std::copy(test_imp.values.row(i), test_imp.values.row(i) + features.d,
                          assembled_gain[s].row(row));
                std::copy(test_base.values.row(i), test_base.values.row(i) + features.d,
                          assembled_base[s].row(row));
            }

            if (with_label) {
                RngStream tr_rng = root.substream("impute-train", s, f);
                const Dataset train_imp = impute(model, train_ds, tr_rng, 1).front();
                const auto w = train_logistic(train_imp.values,
                                              subset(data.labels, split.train),
                                              config.logistic);
                const auto scores = logistic_scores(test_imp.values, w);
                r.fold_auroc = auroc(scores, subset(data.labels, split.test));
            }
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    }
    for (const auto& r : results) {
        if (!r.error.empty()) throw error("evaluate run failed: " + r.error);
    }

    MetricsReport report;
    report.seed = config.train.seed;
    report.config_echo = train_config_echo(config.train, &config);

    std::vector<double> rmse_per_seed, base_per_seed, pooled_per_seed, aurocs;
    std::vector<double> cong_l1, cong_l2, cong_l1_base, cong_l2_base;

    std::vector<double> w_complete;
    if (with_label) {
        w_complete = train_logistic(features.values, data.labels, config.logistic);
    }

    for (std::size_t s = 0; s < config.seeds; ++s) {
        SqErr gain_total, base_total, pooled_total;
        for (std::size_t f = 0; f < config.folds; ++f) {
            const RunResult& r = results[s * config.folds + f];
            gain_total.sum += r.gain.sum;
            gain_total.count += r.gain.count;
            base_total.sum += r.baseline.sum;
            base_total.count += r.baseline.count;
            pooled_total.sum += r.pooled.sum;
            pooled_total.count += r.pooled.count;
            if (with_label) aurocs.push_back(r.fold_auroc);
        }
        rmse_per_seed.push_back(gain_total.rmse());
        base_per_seed.push_back(base_total.rmse());
        if (config.n_draws > 1) pooled_per_seed.push_back(pooled_total.rmse());

        if (with_label) {
            const auto w_gain =
                train_logistic(assembled_gain[s], data.labels, config.logistic);
            const auto w_base =
                train_logistic(assembled_base[s], data.labels, config.logistic);
            const Congeniality cg = congeniality(w_complete, w_gain);
            const Congeniality cb = congeniality(w_complete, w_base);
            cong_l1.push_back(cg.l1);
            cong_l2.push_back(cg.l2);
            cong_l1_base.push_back(cb.l1);
            cong_l2_base.push_back(cb.l2);
        }
    }

    report.rmse = summarize(rmse_per_seed);
    report.rmse_baseline = summarize(base_per_seed);
    if (config.n_draws > 1) report.rmse_pooled = summarize(pooled_per_seed);
    if (with_label) {
        report.auroc = summarize(aurocs);
        report.congeniality_l1 = summarize(cong_l1);
        report.congeniality_l2 = summarize(cong_l2);
        report.congeniality_l1_baseline = summarize(cong_l1_base);
        report.congeniality_l2_baseline = summarize(cong_l2_base);
    }
    return report;
}

MetricsReport run_ablation(const Dataset& masked, const TrainConfig& base_config,
                           const std::vector<std::uint64_t>& seeds) {
    if (!masked.truth) {
        throw usage_error("ablation: dataset has no ground truth for masked cells");
    }
    if (seeds.empty()) throw usage_error("ablation: need at least one seed");

    const auto& variants = ablation_variants();
    const std::size_t n_runs = variants.size() * seeds.size();

    struct RunResult {
        double rmse = 0.0;
        std::string error;
    };
    std::vector<RunResult> results(n_runs);

#pragma omp parallel for schedule(dynamic)
    for (long long run = 0; run < static_cast<long long>(n_runs); ++run) {
        const std::size_t vi = static_cast<std::size_t>(run) / seeds.size();
        const std::size_t si = static_cast<std::size_t>(run) % seeds.size();
        RunResult& r = results[run];
        try {
            TrainConfig cfg = base_config;
            cfg.variant = variants[vi];
            cfg.seed = RngStream(seeds[si]).substream("ablate", vi).seed();
            const GainModel model = train(masked, cfg);
            RngStream imp_rng = RngStream(seeds[si]).substream("ablate-impute", vi);
            const Dataset imp = impute(model, masked, imp_rng, 1).front();
            r.rmse = rmse_missing(*masked.truth, imp.values, masked.mask).value();
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    }
    for (const auto& r : results) {
        if (!r.error.empty()) throw error("ablation run failed: " + r.error);
    }

    MetricsReport report;
    report.seed = base_config.seed;
    report.config_echo = train_config_echo(base_config, nullptr);

    std::vector<double> base_rmse;
    const Dataset base = mean_impute(masked);
    base_rmse.push_back(rmse_missing(*masked.truth, base.values, masked.mask).value());
    report.rmse_baseline = summarize(base_rmse);

    for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        std::vector<double> rmses;
        for (std::size_t si = 0; si < seeds.size(); ++si) {
            rmses.push_back(results[vi * seeds.size() + si].rmse);
        }
        report.per_variant[to_string(variants[vi])] = summarize(rmses);
    }
    report.rmse = report.per_variant.at("full");
    return report;
}

}  // namespace gain
