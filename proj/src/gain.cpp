#include "gain/gain.hpp"

#include <cmath>

#include "gain/losses.hpp"

namespace gain {

std::string to_string(GainVariant v) {
    switch (v) {
        case GainVariant::full: return "full";
        case GainVariant::no_lg: return "no_lg";
        case GainVariant::no_lm: return "no_lm";
        case GainVariant::no_hint: return "no_hint";
        case GainVariant::no_hint_no_lm: return "no_hint_no_lm";
    }
    return "full";
}

GainVariant variant_from_string(const std::string& s) {
    if (s == "full") return GainVariant::full;
    if (s == "no_lg") return GainVariant::no_lg;
    if (s == "no_lm") return GainVariant::no_lm;
    if (s == "no_hint") return GainVariant::no_hint;
    if (s == "no_hint_no_lm") return GainVariant::no_hint_no_lm;
    throw validation_error("unknown variant '" + s + "'");
}

void TrainConfig::validate() const {
    if (k_d < 1 || k_g < 1) throw usage_error("train: k_d and k_g must be >= 1");
    if (iterations < 1) throw usage_error("train: iterations must be >= 1");
    if (!(alpha >= 0.0)) throw usage_error("train: alpha must be >= 0");
    if (!(learning_rate > 0.0)) throw usage_error("train: learning rate must be > 0");
    if (!(noise_high > 0.0 && noise_high <= 1.0)) {
        throw usage_error("train: noise_high must be in (0,1]");
    }
}

std::vector<double> sample_noise(std::span<const double> mask_row, RngStream& rng,
                                 double noise_high) {
    if (!(noise_high > 0.0 && noise_high <= 1.0)) {
        throw usage_error("sample_noise: noise_high must be in (0,1]");
    }
    std::vector<double> z(mask_row.size(), 0.0);
    for (std::size_t i = 0; i < mask_row.size(); ++i) {
        if (mask_row[i] == 0.0) z[i] = rng.uniform(0.0, noise_high);
    }
    return z;
}

HintDraw sample_hint(std::span<const double> mask_row, RngStream& rng) {
    const std::size_t d = mask_row.size();
    if (d < 1) throw usage_error("sample_hint: empty mask row");
    HintDraw draw;
    draw.hidden_index = rng.uniform_index(d);
    draw.b.assign(d, 1.0);
    draw.b[draw.hidden_index] = 0.0;
    draw.h.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        draw.h[i] = draw.b[i] * mask_row[i] + 0.5 * (1.0 - draw.b[i]);
    }
    return draw;
}

HintDraw uninformative_hint(std::size_t d) {
    HintDraw draw;
    draw.hidden_index = 0;
    draw.b.assign(d, 0.0);
    draw.h.assign(d, 0.5);
    return draw;
}

namespace {

Matrix hconcat(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw shape_error("hconcat: row mismatch");
    Matrix out(a.rows, a.cols + b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        std::copy(a.row(i), a.row(i) + a.cols, out.row(i));
        std::copy(b.row(i), b.row(i) + b.cols, out.row(i) + a.cols);
    }
    return out;
}

// values carry the sentinel 0 in missing slots, so values + noise is
// m .* x + (1-m) .* z.
Matrix generator_input(const MiniBatch& batch) {
    Matrix filled = batch.values;
    for (std::size_t i = 0; i < filled.size(); ++i) filled.v[i] += batch.noise.v[i];
    return hconcat(filled, batch.mask);
}

Matrix complete_batch(const MiniBatch& batch, const Matrix& x_bar) {
    Matrix x_hat = batch.values;
    for (std::size_t i = 0; i < x_hat.size(); ++i) {
        x_hat.v[i] += (1.0 - batch.mask.v[i]) * x_bar.v[i];
    }
    return x_hat;
}

}  // namespace

std::vector<double> generate(const Generator& gen, std::span<const double> values,
                             std::span<const double> mask_row,
                             std::span<const double> z_masked) {
    const std::size_t d = values.size();
    if (mask_row.size() != d || z_masked.size() != d) {
        throw shape_error("generate: row length mismatch");
    }
    Matrix in(1, 2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        in.at(0, i) = mask_row[i] * values[i] + z_masked[i];
        in.at(0, d + i) = mask_row[i];
    }
    const ForwardTrace t = forward(gen.net, in);
    return {t.output().v.begin(), t.output().v.end()};
}

std::vector<double> complete(std::span<const double> values,
                             std::span<const double> mask_row,
                             std::span<const double> x_bar) {
    const std::size_t d = values.size();
    if (mask_row.size() != d || x_bar.size() != d) {
        throw shape_error("complete: row length mismatch");
    }
    std::vector<double> x_hat(d);
    for (std::size_t i = 0; i < d; ++i) {
        x_hat[i] = mask_row[i] * values[i] + (1.0 - mask_row[i]) * x_bar[i];
    }
    return x_hat;
}

double loss_d(std::span<const double> m, std::span<const double> m_hat,
              std::span<const double> b) {
    double loss = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (b[i] != 0.0) continue;
        loss -= m[i] * safe_log(m_hat[i]) + (1.0 - m[i]) * safe_log(1.0 - m_hat[i]);
    }
    return loss;
}

double loss_g_adv(std::span<const double> m, std::span<const double> m_hat,
                  std::span<const double> b) {
    double loss = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (b[i] != 0.0) continue;
        loss -= (1.0 - m[i]) * safe_log(m_hat[i]);
    }
    return loss;
}

double loss_m(std::span<const double> values, std::span<const double> x_bar,
              std::span<const double> m, std::span<const FeatureSpec> features) {
    double loss = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (m[i] == 0.0) continue;
        if (features[i].kind == FeatureKind::binary) {
            loss -= values[i] * safe_log(x_bar[i]);
        } else {
            const double e = x_bar[i] - values[i];
            loss += e * e;
        }
    }
    return loss;
}

double discriminator_loss_and_grads(const Generator& gen, const Discriminator& disc,
                                    const MiniBatch& batch, Gradients* disc_grads) {
    const Matrix g_in = generator_input(batch);
    const ForwardTrace g_trace = forward(gen.net, g_in);
    const Matrix x_hat = complete_batch(batch, g_trace.output());
    const Matrix d_in = hconcat(x_hat, batch.hint);
    const ForwardTrace d_trace = forward(disc.net, d_in);
    const Matrix& m_hat = d_trace.output();

    double loss = 0.0;
    Matrix d_mhat(m_hat.rows, m_hat.cols);
    for (std::size_t i = 0; i < m_hat.size(); ++i) {
        if (batch.b.v[i] != 0.0) continue;
        const double m = batch.mask.v[i];
        const double p = m_hat.v[i];
        loss -= m * safe_log(p) + (1.0 - m) * safe_log(1.0 - p);
        d_mhat.v[i] = -m * safe_log_grad(p) + (1.0 - m) * safe_log_grad(1.0 - p);
    }
    if (disc_grads) *disc_grads = backward(disc.net, d_trace, d_mhat);
    return loss;
}

double generator_loss_and_grads(const Generator& gen, const Discriminator& disc,
                                const MiniBatch& batch,
                                std::span<const FeatureSpec> features, double alpha,
                                bool adv_enabled, bool recon_enabled,
                                Gradients* gen_grads, double* adv_out,
                                double* recon_out) {
    const Matrix g_in = generator_input(batch);
    const ForwardTrace g_trace = forward(gen.net, g_in);
    const Matrix& x_bar = g_trace.output();
    const Matrix x_hat = complete_batch(batch, x_bar);
    const Matrix d_in = hconcat(x_hat, batch.hint);
    const ForwardTrace d_trace = forward(disc.net, d_in);
    const Matrix& m_hat = d_trace.output();

    const std::size_t d = batch.values.cols;

    double adv = 0.0;
    Matrix d_mhat(m_hat.rows, m_hat.cols);
    for (std::size_t i = 0; i < m_hat.size(); ++i) {
        if (batch.b.v[i] != 0.0 || batch.mask.v[i] != 0.0) continue;
        adv -= safe_log(m_hat.v[i]);
        d_mhat.v[i] = -safe_log_grad(m_hat.v[i]);
    }

    double recon = 0.0;
    Matrix d_xbar_recon(x_bar.rows, x_bar.cols);
    for (std::size_t r = 0; r < x_bar.rows; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            if (batch.mask.at(r, c) == 0.0) continue;
            const double x = batch.values.at(r, c);
            const double xb = x_bar.at(r, c);
            if (features[c].kind == FeatureKind::binary) {
                recon -= x * safe_log(xb);
                d_xbar_recon.at(r, c) = -x * safe_log_grad(xb);
            } else {
                const double e = xb - x;
                recon += e * e;
                d_xbar_recon.at(r, c) = 2.0 * e;
            }
        }
    }

    if (gen_grads) {
        Matrix d_xbar(x_bar.rows, x_bar.cols);
        if (adv_enabled) {
            // Only the completed vector half of the discriminator input
            // depends on the generator, and only through missing slots.
            const Gradients disc_back = backward(disc.net, d_trace, d_mhat);
            for (std::size_t r = 0; r < x_bar.rows; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    d_xbar.at(r, c) = (1.0 - batch.mask.at(r, c)) *
                                      disc_back.input.at(r, c);
                }
            }
        }
        if (recon_enabled && alpha != 0.0) {
            for (std::size_t i = 0; i < d_xbar.size(); ++i) {
                d_xbar.v[i] += alpha * d_xbar_recon.v[i];
            }
        }
        *gen_grads = backward(gen.net, g_trace, d_xbar);
    }

    if (adv_out) *adv_out = adv;
    if (recon_out) *recon_out = recon;
    return (adv_enabled ? adv : 0.0) + alpha * (recon_enabled ? recon : 0.0);
}

namespace {

MiniBatch draw_minibatch(const Dataset& ds, std::size_t k, RngStream& data_rng,
                         RngStream& noise_rng, RngStream& hint_rng,
                         double noise_high, bool informative_hint) {
    MiniBatch batch;
    batch.values = Matrix(k, ds.d);
    batch.mask = Matrix(k, ds.d);
    batch.noise = Matrix(k, ds.d);
    batch.b = Matrix(k, ds.d);
    batch.hint = Matrix(k, ds.d);
    for (std::size_t r = 0; r < k; ++r) {
        const std::size_t row = data_rng.uniform_index(ds.n);
        std::copy(ds.values.row(row), ds.values.row(row) + ds.d, batch.values.row(r));
        std::copy(ds.mask.row(row), ds.mask.row(row) + ds.d, batch.mask.row(r));
        const auto z = sample_noise({batch.mask.row(r), ds.d}, noise_rng, noise_high);
        std::copy(z.begin(), z.end(), batch.noise.row(r));
        const HintDraw draw = informative_hint
                                  ? sample_hint({batch.mask.row(r), ds.d}, hint_rng)
                                  : uninformative_hint(ds.d);
        std::copy(draw.b.begin(), draw.b.end(), batch.b.row(r));
        std::copy(draw.h.begin(), draw.h.end(), batch.hint.row(r));
    }
    return batch;
}

}  // namespace

GainModel train(const Dataset& ds, const TrainConfig& config) {
    config.validate();
    if (ds.d < 2) throw usage_error("train: need at least 2 features");
    const std::size_t missing = ds.missing_count();
    if (missing == 0) throw usage_error("train: dataset has no missing cells");
    if (missing == ds.n * ds.d) throw usage_error("train: dataset has no observed cells");

    const std::size_t kd = std::min(config.k_d, ds.n);
    const std::size_t kg = std::min(config.k_g, ds.n);

    std::vector<std::size_t> dims{2 * ds.d};
    if (config.hidden.empty()) {
        dims.push_back(ds.d);
        dims.push_back(ds.d);
    } else {
        for (std::size_t h : config.hidden) dims.push_back(h);
    }
    dims.push_back(ds.d);

    RngStream root(config.seed);
    RngStream init_rng = root.substream("init");
    RngStream data_rng = root.substream("data");
    RngStream noise_rng = root.substream("noise");
    RngStream hint_rng = root.substream("hint");

    GainModel model;
    model.generator.net =
        make_mlp(dims, Activation::relu, Activation::sigmoid, init_rng);
    model.discriminator.net =
        make_mlp(dims, Activation::relu, Activation::sigmoid, init_rng);
    model.config = config;
    model.features = ds.features;
    model.history.reserve(config.iterations);

    const bool informative_hint = config.variant != GainVariant::no_hint &&
                                  config.variant != GainVariant::no_hint_no_lm;
    const bool adv_enabled = config.variant != GainVariant::no_lg;
    const bool recon_enabled = config.variant != GainVariant::no_lm &&
                               config.variant != GainVariant::no_hint_no_lm;

    const AdamHyper hp{config.learning_rate, 0.9, 0.999, 1e-8};
    AdamState d_state = AdamState::zeros_like(model.discriminator.net);
    AdamState g_state = AdamState::zeros_like(model.generator.net);

    Gradients d_grads, g_grads;
    for (std::size_t it = 0; it < config.iterations; ++it) {
        IterationLoss rec;

        const MiniBatch d_batch =
            draw_minibatch(ds, kd, data_rng, noise_rng, hint_rng, config.noise_high,
                           informative_hint);
        rec.d_loss = discriminator_loss_and_grads(model.generator,
                                                  model.discriminator, d_batch,
                                                  &d_grads);
        if (config.optimizer == OptimizerKind::adam) {
            adam_step(model.discriminator.net, d_grads, d_state, hp);
        } else {
            sgd_step(model.discriminator.net, d_grads, config.learning_rate);
        }

        const MiniBatch g_batch =
            draw_minibatch(ds, kg, data_rng, noise_rng, hint_rng, config.noise_high,
                           informative_hint);
        generator_loss_and_grads(model.generator, model.discriminator, g_batch,
                                 ds.features, config.alpha, adv_enabled,
                                 recon_enabled, &g_grads, &rec.g_adv, &rec.g_recon);
        if (config.optimizer == OptimizerKind::adam) {
            adam_step(model.generator.net, g_grads, g_state, hp);
        } else {
            sgd_step(model.generator.net, g_grads, config.learning_rate);
        }

        if (!std::isfinite(rec.d_loss) || !std::isfinite(rec.g_adv) ||
            !std::isfinite(rec.g_recon)) {
            throw divergence_error(
                "train: non-finite loss at iteration " + std::to_string(it) +
                " (d=" + std::to_string(rec.d_loss) +
                ", g_adv=" + std::to_string(rec.g_adv) +
                ", g_recon=" + std::to_string(rec.g_recon) + ")");
        }
        model.history.push_back(rec);
    }
    return model;
}

std::vector<Dataset> impute(const GainModel& model, const Dataset& ds,
                            RngStream& rng, std::size_t n_draws) {
    if (n_draws < 1) throw usage_error("impute: n_draws must be >= 1");
    if (ds.features.size() != model.features.size()) {
        throw usage_error("impute: dataset has " + std::to_string(ds.features.size()) +
                          " features, model expects " +
                          std::to_string(model.features.size()));
    }
    for (std::size_t j = 0; j < ds.features.size(); ++j) {
        if (ds.features[j].name != model.features[j].name ||
            ds.features[j].kind != model.features[j].kind) {
            throw usage_error("impute: feature '" + ds.features[j].name +
                              "' does not match the model schema");
        }
    }

    std::vector<Dataset> draws;
    draws.reserve(n_draws);
    for (std::size_t t = 0; t < n_draws; ++t) {
        Matrix noise(ds.n, ds.d);
        for (std::size_t i = 0; i < ds.n; ++i) {
            const auto z = sample_noise({ds.mask.row(i), ds.d}, rng,
                                        model.config.noise_high);
            std::copy(z.begin(), z.end(), noise.row(i));
        }
        Matrix g_in = ds.values;
        for (std::size_t i = 0; i < g_in.size(); ++i) g_in.v[i] += noise.v[i];
        const Matrix full_in = [&] {
            Matrix out(ds.n, 2 * ds.d);
            for (std::size_t i = 0; i < ds.n; ++i) {
                std::copy(g_in.row(i), g_in.row(i) + ds.d, out.row(i));
                std::copy(ds.mask.row(i), ds.mask.row(i) + ds.d, out.row(i) + ds.d);
            }
            return out;
        }();
        const ForwardTrace t_g = forward(model.generator.net, full_in);
        const Matrix& x_bar = t_g.output();

        Dataset out = ds;
        out.truth.reset();
        out.truth_raw.reset();
        for (std::size_t i = 0; i < ds.n; ++i) {
            for (std::size_t j = 0; j < ds.d; ++j) {
                if (ds.mask.at(i, j) != 0.0) continue;
                double v = x_bar.at(i, j);
                if (ds.features[j].kind == FeatureKind::binary) {
                    v = v >= 0.5 ? 1.0 : 0.0;
                }
                out.values.at(i, j) = v;
                out.raw.at(i, j) = denormalize_cell(ds.features[j], v);
                out.mask.at(i, j) = 1.0;
            }
        }
        draws.push_back(std::move(out));
    }
    return draws;
}

}  // namespace gain
