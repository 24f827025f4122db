#pragma once

#include <cstdint>
#include <vector>

#include "gain/mlp.hpp"

namespace gain {

// Discrete toy world over d <= 3 binary components: a joint pmf for the
// data vector, an independent pmf for the mask (MCAR), and a tabular
// generator. Small enough to enumerate every (data, mask, imputation,
// hidden-index) outcome exactly.
struct ToySpec {
    std::size_t d = 2;
    std::vector<double> px;  // 2^d entries, data pmf
    std::vector<double> pm;  // 2^d entries, mask pmf

    void validate() const;
};

// Imputation distribution conditioned on (mask, observed values): for each
// such pattern, a pmf over completed vectors that agree with the observed
// components. Bits are little-endian: component i is bit i.
class GeneratorTable {
public:
    explicit GeneratorTable(std::size_t d);

    // pmf_over_xhat has 2^d entries; mass on vectors disagreeing with the
    // observed part of x is rejected.
    void set(unsigned mask_bits, unsigned x_bits, std::vector<double> pmf_over_xhat);

    double prob(unsigned mask_bits, unsigned x_bits, unsigned xhat_bits) const;

    std::size_t dim() const { return d_; }

private:
    std::size_t d_;
    // slot [mask][x & mask] -> pmf; empty = unset.
    std::vector<std::vector<double>> table_;
};

// Hint component states: revealed-missing (0), hidden (0.5), revealed-observed (1).
enum class HintTrit : std::uint8_t { zero = 0, half = 1, one = 2 };

struct PosteriorEntry {
    unsigned xhat_bits = 0;
    std::vector<HintTrit> hint;
    std::size_t hidden_index = 0;      // position of the single 0.5
    double prob = 0.0;                 // joint p(x_hat, h)
    std::vector<double> posterior;     // p(m_i = 1 | x_hat, h) per component
};

// Exhaustively enumerated posterior table for the optimal discriminator:
// p(x,h,m_i=1) / (p(x,h,m_i=1) + p(x,h,m_i=0)) over every
// positive-probability (x_hat, hint) pair. No sampling anywhere.
struct DiscretePosteriorTable {
    std::size_t d = 0;
    std::vector<PosteriorEntry> entries;

    const PosteriorEntry* find(unsigned xhat_bits,
                               const std::vector<HintTrit>& hint) const;
};

DiscretePosteriorTable bayes_oracle(const ToySpec& toy, const GeneratorTable& gen);

// Real-vector embedding of a table entry: x_hat bits as 0/1 doubles
// followed by the hint as {0, 0.5, 1} doubles (discriminator input layout).
std::vector<double> embed_entry(const PosteriorEntry& e, std::size_t d);

struct OracleFitConfig {
    std::size_t iterations = 4000;
    std::size_t batch = 128;
    double learning_rate = 1e-3;
    std::vector<std::size_t> hidden = {16, 16};
    std::uint64_t seed = 7;
};

struct OracleFitResult {
    Mlp discriminator;
    // Probability-weighted mean absolute error between the trained
    // discriminator and the oracle posterior at the hidden component.
    double weighted_mae = 0.0;
};

// Trains a discriminator against the fixed tabular generator by sampling
// the toy world and minimizing the hint-restricted cross-entropy, then
// scores it against the enumerated posterior.
OracleFitResult fit_discriminator_to_toy(const ToySpec& toy, const GeneratorTable& gen,
                                         const DiscretePosteriorTable& table,
                                         const OracleFitConfig& config = {});

// Reference fixtures.

// d=2 comonotone binary data: P(X=(1,1)) = p1, P(X=(0,0)) = 1-p1, mask
// uniform over {(1,0),(0,1)} (exactly one component missing).
ToySpec comonotone_toy(double p1 = 0.7);

// d=2 generator that copies the observed component into the missing one.
GeneratorTable copy_generator_2d();

// Generator imputing every missing component iid Bernoulli(q), defined for
// all masks and observed patterns.
GeneratorTable iid_bernoulli_generator(std::size_t d, double q);

}  // namespace gain
