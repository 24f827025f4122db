#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gain/dataset.hpp"
#include "gain/logistic.hpp"
#include "gain/metrics.hpp"

using namespace gain;

TEST_CASE("rmse_missing: hand-checked values") {
    Matrix truth(2, 2), imputed(2, 2), mask(2, 2, 1.0);
    truth.v = {0.4, 0.1, 0.2, 0.8};
    imputed.v = {0.4, 0.1, 0.2, 0.8};
    CHECK_FALSE(rmse_missing(truth, imputed, mask).has_value());  // nothing missing

    mask.at(0, 0) = 0.0;
    imputed.at(0, 0) = 0.1;
    CHECK(*rmse_missing(truth, imputed, mask) == doctest::Approx(0.3));

    mask.at(1, 1) = 0.0;
    imputed.at(1, 1) = 0.4;  // error 0.4
    CHECK(*rmse_missing(truth, imputed, mask) ==
          doctest::Approx(std::sqrt((0.09 + 0.16) / 2.0)));

    // Exact agreement on missing cells gives zero.
    imputed.at(0, 0) = 0.4;
    imputed.at(1, 1) = 0.8;
    CHECK(*rmse_missing(truth, imputed, mask) == 0.0);
}

TEST_CASE("rmse_missing is invariant under row permutation") {
    RngStream rng(1);
    const std::size_t n = 20;
    Matrix truth(n, 3), imputed(n, 3), mask(n, 3);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        truth.v[i] = rng.uniform();
        imputed.v[i] = rng.uniform();
        mask.v[i] = rng.uniform() < 0.5;
    }
    const double base = *rmse_missing(truth, imputed, mask);

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        std::swap(perm[i], perm[i + rng.uniform_index(n - i)]);
    }
    Matrix t2(n, 3), i2(n, 3), m2(n, 3);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            t2.at(i, j) = truth.at(perm[i], j);
            i2.at(i, j) = imputed.at(perm[i], j);
            m2.at(i, j) = mask.at(perm[i], j);
        }
    }
    CHECK(*rmse_missing(t2, i2, m2) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("mean_impute: observed mean fills continuous gaps") {
    Matrix raw(3, 1);
    raw.v = {0.2, 0.4, 0.9};
    Matrix mask(3, 1, 1.0);
    mask.at(2, 0) = 0.0;
    const Dataset ds = make_dataset(raw, mask, {"f"});
    const Dataset filled = mean_impute(ds);
    // Observed normalized values are {0, 1}; their mean is 0.5.
    CHECK(filled.values.at(2, 0) == doctest::Approx(0.5));
    CHECK(filled.raw.at(2, 0) == doctest::Approx(0.3));  // denormalized
    CHECK(filled.fully_observed());
}

TEST_CASE("mean_impute: binary gaps get the majority value") {
    Matrix raw(5, 1);
    raw.v = {1, 1, 0, 1, 0};
    Matrix mask(5, 1, 1.0);
    mask.at(4, 0) = 0.0;
    const Dataset ds = make_dataset(raw, mask, {"b"});
    REQUIRE(ds.features[0].kind == FeatureKind::binary);
    const Dataset filled = mean_impute(ds);
    CHECK(filled.values.at(4, 0) == 1.0);  // 3 ones vs 1 zero observed
}

TEST_CASE("mean_impute: fully observed input is unchanged") {
    RngStream rng(2);
    const Dataset ds = synthesize_correlated(30, 0.5, rng);
    const Dataset filled = mean_impute(ds);
    CHECK(filled.values.v == ds.values.v);
}

TEST_CASE("mean_impute: fully missing feature errors with its name") {
    Matrix raw(2, 2);
    raw.v = {1.0, 0.0, 2.0, 0.0};
    Matrix mask(2, 2, 1.0);
    mask.at(0, 1) = 0.0;
    mask.at(1, 1) = 0.0;
    const Dataset ds = make_dataset(raw, mask, {"ok", "empty"});
    CHECK_THROWS_WITH_AS(mean_impute(ds), doctest::Contains("empty"),
                         validation_error);
}

TEST_CASE("mean_impute rmse approaches the feature dispersion") {
    // For mean imputation the expected squared error per missing cell is the
    // feature variance, so rmse tracks the std on the normalized scale.
    RngStream rng(3);
    const std::size_t n = 4000;
    Matrix raw(n, 1);
    for (double& x : raw.v) x = rng.normal();
    const Dataset ds = make_dataset(raw, Matrix(n, 1, 1.0), {"g"});

    RngStream mrng(4);
    const Dataset masked = introduce_mcar(ds, 0.3, mrng);
    const Dataset filled = mean_impute(masked);
    const double rmse = *rmse_missing(*masked.truth, filled.values, masked.mask);

    double mean = 0.0;
    for (double x : ds.values.v) mean += x;
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (double x : ds.values.v) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / static_cast<double>(n));
    CHECK(rmse == doctest::Approx(sd).epsilon(0.05));
}

TEST_CASE("auroc: hand-checked values and errors") {
    CHECK(auroc({0, 1, 0, 1}, {0, 1, 0, 1}) == 1.0);
    CHECK(auroc({0.7, 0.7, 0.7}, {0, 1, 0}) == 0.5);
    CHECK(auroc({0.1, 0.4, 0.35, 0.8}, {0, 0, 1, 1}) == doctest::Approx(0.75));
    CHECK_THROWS_AS(auroc({0.1, 0.2}, {1, 1}), validation_error);
    CHECK_THROWS_AS(auroc({0.1, 0.2}, {0.5, 1}), validation_error);
}

TEST_CASE("auroc is invariant under strictly increasing transforms") {
    RngStream rng(5);
    std::vector<double> scores(200), labels(200);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        scores[i] = rng.uniform(-3.0, 3.0);
        labels[i] = rng.uniform() < 0.4;
    }
    const double base = auroc(scores, labels);
    std::vector<double> warped = scores;
    for (double& s : warped) s = std::exp(0.7 * s) + 2.0;
    CHECK(auroc(warped, labels) == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("congeniality: norms and inequalities") {
    const Congeniality zero = congeniality({1.0, -2.0}, {1.0, -2.0});
    CHECK(zero.l1 == 0.0);
    CHECK(zero.l2 == 0.0);

    const Congeniality c = congeniality({1.0, 0.0}, {0.0, 1.0});
    CHECK(c.l1 == doctest::Approx(2.0));
    CHECK(c.l2 == doctest::Approx(std::sqrt(2.0)));

    RngStream rng(6);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 1 + rng.uniform_index(8);
        std::vector<double> a(d), b(d);
        for (std::size_t i = 0; i < d; ++i) {
            a[i] = rng.uniform(-5.0, 5.0);
            b[i] = rng.uniform(-5.0, 5.0);
        }
        const Congeniality r = congeniality(a, b);
        CHECK(r.l2 <= r.l1 + 1e-12);
        CHECK(r.l1 <= std::sqrt(static_cast<double>(d)) * r.l2 + 1e-12);
    }
    CHECK_THROWS_AS(congeniality({1.0}, {1.0, 2.0}), shape_error);
}

TEST_CASE("train_logistic: separable data scores AUROC 1 on training data") {
    Matrix x(20, 1);
    std::vector<double> y(20);
    for (std::size_t i = 0; i < 20; ++i) {
        x.at(i, 0) = i < 10 ? -1.0 - 0.1 * static_cast<double>(i)
                            : 1.0 + 0.1 * static_cast<double>(i);
        y[i] = i < 10 ? 0.0 : 1.0;
    }
    const auto w = train_logistic(x, y);
    CHECK(auroc(logistic_scores(x, w), y) == 1.0);
}

TEST_CASE("train_logistic: null features give AUROC near one half") {
    RngStream rng(7);
    const std::size_t n = 2000;
    Matrix x(n, 3);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < 3; ++j) x.at(i, j) = rng.uniform();
        y[i] = rng.uniform() < 0.5;
    }
    const auto w = train_logistic(x, y);
    CHECK(auroc(logistic_scores(x, w), y) == doctest::Approx(0.5).epsilon(0.1));
    CHECK(std::abs(auroc(logistic_scores(x, w), y) - 0.5) < 0.05);
}

TEST_CASE("train_logistic: duplicated rows fit identical weights") {
    RngStream rng(8);
    Matrix x(30, 2);
    std::vector<double> y(30);
    for (std::size_t i = 0; i < 30; ++i) {
        x.at(i, 0) = rng.uniform();
        x.at(i, 1) = rng.uniform();
        y[i] = x.at(i, 0) + 0.3 * rng.uniform() > 0.6;
    }
    Matrix xx(60, 2);
    std::vector<double> yy(60);
    for (std::size_t i = 0; i < 60; ++i) {
        xx.at(i, 0) = x.at(i % 30, 0);
        xx.at(i, 1) = x.at(i % 30, 1);
        yy[i] = y[i % 30];
    }
    // The mean-form loss is unchanged by duplication; the fits agree up to
    // float summation order and the convergence tolerance.
    const auto w1 = train_logistic(x, y);
    const auto w2 = train_logistic(xx, yy);
    REQUIRE(w1.size() == w2.size());
    for (std::size_t i = 0; i < w1.size(); ++i) {
        CHECK(w1[i] == doctest::Approx(w2[i]).epsilon(1e-4));
    }

    // Exact determinism on identical input.
    CHECK(train_logistic(x, y) == w1);
}

TEST_CASE("train_logistic: input validation") {
    Matrix x(4, 2);
    CHECK_THROWS_AS(train_logistic(x, {1, 1, 1, 1}), validation_error);
    CHECK_THROWS_AS(train_logistic(x, {0, 1, 1}), shape_error);
    Matrix wide(2, 4);
    CHECK_THROWS_AS(train_logistic(wide, {0, 1}), usage_error);
}

TEST_CASE("summarize: mean and sample std") {
    const Summary s = summarize({1.0, 2.0, 3.0});
    CHECK(s.mean == doctest::Approx(2.0));
    CHECK(s.stddev == doctest::Approx(1.0));
    CHECK(s.count == 3);
    CHECK(summarize({}).count == 0);
    CHECK(summarize({5.0}).stddev == 0.0);
}

TEST_CASE("metrics report serialization is deterministic and versioned") {
    MetricsReport r;
    r.seed = 42;
    r.rmse = {0.06, 0.001, 3};
    r.rmse_baseline = {0.14, 0.002, 3};
    r.per_variant["full"] = {0.06, 0.001, 3};
    r.per_variant["no_hint"] = {0.07, 0.003, 3};
    r.config_echo = "alpha=100\niterations=10\n";

    const std::string a = r.serialize();
    CHECK(a == r.serialize());
    CHECK(a.find("report.version=1") != std::string::npos);
    CHECK(a.find("rmse.mean=0.06") != std::string::npos);
    CHECK(a.find("variant.no_hint.mean=0.07") != std::string::npos);
    CHECK(a.find("config.alpha=100") != std::string::npos);

    const std::string t = r.table();
    CHECK(t.find("rmse (gain)") != std::string::npos);
    CHECK(t.find("rmse [full]") != std::string::npos);
}
