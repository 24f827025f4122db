#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gain/dataset.hpp"
#include "gain/mlp.hpp"
#include "gain/optimizer.hpp"

namespace gain {

// Ablation variants: the full model, without the adversarial generator
// loss (a plain autoencoder), without the reconstruction loss, without the
// hint mechanism, and without both hint and reconstruction loss.
enum class GainVariant { full, no_lg, no_lm, no_hint, no_hint_no_lm };

enum class OptimizerKind { adam, sgd };

std::string to_string(GainVariant v);
GainVariant variant_from_string(const std::string& s);

struct TrainConfig {
    std::size_t k_d = 128;  // discriminator mini-batch size (capped at n)
    std::size_t k_g = 128;  // generator mini-batch size (capped at n)
    double alpha = 10.0;    // reconstruction-loss weight
    std::size_t iterations = 5000;
    double learning_rate = 1e-3;
    double noise_high = 0.01;          // z ~ Uniform[0, noise_high]
    std::vector<std::size_t> hidden;   // empty = two hidden layers of width d
    std::uint64_t seed = 42;
    GainVariant variant = GainVariant::full;
    OptimizerKind optimizer = OptimizerKind::adam;

    void validate() const;
};

// Generator: input 2d (values with noise in the missing slots, then the
// mask), output d in (0,1).
struct Generator {
    Mlp net;
};

// Discriminator: input 2d (completed vector, then the hint), output d
// per-component observation probabilities in (0,1).
struct Discriminator {
    Mlp net;
};

// One hint draw: b has exactly one zero (the hidden index); h agrees with
// the mask everywhere b is 1 and is 0.5 at the hidden index.
struct HintDraw {
    std::vector<double> b;
    std::vector<double> h;
    std::size_t hidden_index = 0;
};

struct IterationLoss {
    double d_loss = 0.0;
    double g_adv = 0.0;
    double g_recon = 0.0;
};

struct GainModel {
    Generator generator;
    Discriminator discriminator;
    TrainConfig config;
    std::vector<FeatureSpec> features;  // carries normalization params
    std::vector<IterationLoss> history;
};

// --- sampling -------------------------------------------------------------

// (1-m) .* z with z_i ~ Uniform[0, noise_high]: zero where observed,
// uniform noise where missing.
std::vector<double> sample_noise(std::span<const double> mask_row, RngStream& rng,
                                 double noise_high);

// Hides one uniformly chosen component of the mask: b_j = 0 iff j = k,
// h = b .* m + 0.5 (1 - b).
HintDraw sample_hint(std::span<const double> mask_row, RngStream& rng);

// Hint that carries no information: b all zero, h identically 0.5. Used by
// the no-hint variants; the losses then range over every component.
HintDraw uninformative_hint(std::size_t d);

// --- single-row forms -----------------------------------------------------

// x_bar = G(concat(values + z_masked, m)). `values` must hold the sentinel
// 0 in missing slots so values + z_masked realizes m.*x + (1-m).*z.
std::vector<double> generate(const Generator& gen, std::span<const double> values,
                             std::span<const double> mask_row,
                             std::span<const double> z_masked);

// x_hat = m .* values + (1 - m) .* x_bar.
std::vector<double> complete(std::span<const double> values,
                             std::span<const double> mask_row,
                             std::span<const double> x_bar);

// --- losses ---------------------------------------------------------------

// -sum_{i: b_i=0} [m_i log m_hat_i + (1-m_i) log(1-m_hat_i)]
double loss_d(std::span<const double> m, std::span<const double> m_hat,
              std::span<const double> b);

// -sum_{i: b_i=0} (1-m_i) log(m_hat_i)
double loss_g_adv(std::span<const double> m, std::span<const double> m_hat,
                  std::span<const double> b);

// sum_i m_i * ((x_bar_i - x_i)^2 | continuous, -x_i log(x_bar_i) | binary)
double loss_m(std::span<const double> values, std::span<const double> x_bar,
              std::span<const double> m, std::span<const FeatureSpec> features);

// --- batch losses with gradients (the training-step building blocks) ------

struct MiniBatch {
    Matrix values;  // k x d, sentinel zeros in missing slots
    Matrix mask;    // k x d
    Matrix noise;   // k x d, already masked by (1-m)
    Matrix b;       // k x d
    Matrix hint;    // k x d
};

// Discriminator objective on one mini-batch (sum over rows of loss_d) and
// its gradients with respect to the discriminator parameters.
double discriminator_loss_and_grads(const Generator& gen, const Discriminator& disc,
                                    const MiniBatch& batch, Gradients* disc_grads);

// Generator objective sum(loss_g_adv) + alpha * sum(loss_m) on one
// mini-batch and its gradients with respect to the generator parameters.
// adv/recon switches realize the ablation variants. Raw loss components
// are reported even when a switch turns their gradient off.
double generator_loss_and_grads(const Generator& gen, const Discriminator& disc,
                                const MiniBatch& batch,
                                std::span<const FeatureSpec> features, double alpha,
                                bool adv_enabled, bool recon_enabled,
                                Gradients* gen_grads, double* adv_out,
                                double* recon_out);

// --- training and imputation ----------------------------------------------

// Alternating optimization: one discriminator step, one generator step per
// iteration, mini-batches drawn uniformly with replacement, fresh noise
// and hint draws per batch. Deterministic given config.seed. Throws
// divergence_error (with iteration index) if any loss goes non-finite.
GainModel train(const Dataset& ds, const TrainConfig& config);

// n_draws completed datasets (denormalized). Observed cells are copied
// from the input exactly; missing cells are filled from fresh-noise
// generator output, binary features thresholded at 0.5.
std::vector<Dataset> impute(const GainModel& model, const Dataset& ds,
                            RngStream& rng, std::size_t n_draws);

}  // namespace gain
