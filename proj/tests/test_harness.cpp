#include <doctest.h>

#include <omp.h>

#include "gain/harness.hpp"

using namespace gain;

namespace {

Dataset labeled_toy(std::size_t n, std::uint64_t seed) {
    // Three columns: two correlated continuous features plus a binary label
    // derived from the first feature.
    RngStream rng(seed);
    const Dataset base = synthesize_correlated(n, 0.8, rng);
    Matrix raw(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        raw.at(i, 0) = base.raw.at(i, 0);
        raw.at(i, 1) = base.raw.at(i, 1);
        raw.at(i, 2) = base.raw.at(i, 0) > 0.0 ? 1.0 : 0.0;
    }
    return make_dataset(raw, Matrix(n, 3, 1.0), {"f1", "f2", "label"});
}

HarnessConfig tiny_harness() {
    HarnessConfig hc;
    hc.train.iterations = 120;
    hc.train.hidden = {4, 4};
    hc.train.seed = 17;
    hc.folds = 3;
    hc.seeds = 2;
    hc.mcar_rate = 0.3;
    return hc;
}

}  // namespace

TEST_CASE("cv_evaluate: reports rmse with the baseline alongside") {
    const Dataset ds = labeled_toy(90, 1);
    HarnessConfig hc = tiny_harness();
    const MetricsReport rep = cv_evaluate(ds, hc);
    CHECK(rep.rmse.count == 2);
    CHECK(rep.rmse.mean > 0.0);
    CHECK(rep.rmse_baseline.mean > 0.0);
    CHECK_FALSE(rep.auroc.has_value());  // no label column named
    CHECK_FALSE(rep.rmse_pooled.has_value());
}

TEST_CASE("cv_evaluate: label column unlocks auroc and congeniality") {
    const Dataset ds = labeled_toy(90, 2);
    HarnessConfig hc = tiny_harness();
    hc.label_column = "label";
    hc.logistic.ridge = 0.01;
    const MetricsReport rep = cv_evaluate(ds, hc);
    REQUIRE(rep.auroc.has_value());
    CHECK(rep.auroc->count == 6);  // seeds x folds
    CHECK(rep.auroc->mean > 0.5);  // label is a function of f1
    REQUIRE(rep.congeniality_l1.has_value());
    CHECK(rep.congeniality_l2->mean <= rep.congeniality_l1->mean + 1e-12);
    REQUIRE(rep.congeniality_l1_baseline.has_value());
}

TEST_CASE("cv_evaluate: pooled rmse appears with multiple draws") {
    const Dataset ds = labeled_toy(60, 3);
    HarnessConfig hc = tiny_harness();
    hc.n_draws = 4;
    const MetricsReport rep = cv_evaluate(ds, hc);
    REQUIRE(rep.rmse_pooled.has_value());
    CHECK(rep.rmse_pooled->mean > 0.0);
    const std::string text = rep.serialize();
    CHECK(text.find("rmse_pooled.mean=") != std::string::npos);
}

TEST_CASE("cv_evaluate: identical reports regardless of thread count") {
    const Dataset ds = labeled_toy(60, 4);
    HarnessConfig hc = tiny_harness();
    hc.label_column = "label";

    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const std::string serial = cv_evaluate(ds, hc).serialize();
    omp_set_num_threads(2);
    const std::string parallel = cv_evaluate(ds, hc).serialize();
    omp_set_num_threads(saved);
    CHECK(serial == parallel);
}

TEST_CASE("cv_evaluate: input validation") {
    const Dataset ds = labeled_toy(40, 5);
    HarnessConfig hc = tiny_harness();
    RngStream mrng(6);
    const Dataset masked = introduce_mcar(ds, 0.2, mrng);
    CHECK_THROWS_AS(cv_evaluate(masked, hc), usage_error);  // needs ground truth

    hc.label_column = "f1";  // continuous, not a valid label
    CHECK_THROWS_AS(cv_evaluate(ds, hc), usage_error);
}

TEST_CASE("run_ablation: five variants, deterministic across thread counts") {
    RngStream rng(7);
    Dataset ds = synthesize_correlated(80, 0.9, rng);
    RngStream mrng(8);
    const Dataset masked = introduce_mcar(ds, 0.3, mrng);

    TrainConfig cfg;
    cfg.iterations = 100;
    cfg.hidden = {4, 4};
    const std::vector<std::uint64_t> seeds{1, 2};

    const int saved = omp_get_max_threads();
    omp_set_num_threads(2);
    const MetricsReport rep = run_ablation(masked, cfg, seeds);
    omp_set_num_threads(1);
    const MetricsReport rep1 = run_ablation(masked, cfg, seeds);
    omp_set_num_threads(saved);

    CHECK(rep.per_variant.size() == 5);
    for (const auto name : {"full", "no_lg", "no_lm", "no_hint", "no_hint_no_lm"}) {
        REQUIRE(rep.per_variant.count(name) == 1);
        CHECK(rep.per_variant.at(name).count == 2);
    }
    CHECK(rep.serialize() == rep1.serialize());
    CHECK(rep.rmse.mean == rep.per_variant.at("full").mean);

    CHECK_THROWS_AS(run_ablation(ds, cfg, seeds), usage_error);  // no truth
    CHECK_THROWS_AS(run_ablation(masked, cfg, {}), usage_error);
}
