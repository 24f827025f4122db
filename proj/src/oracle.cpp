#include "gain/oracle.hpp"

#include <cmath>

#include "gain/gain.hpp"
#include "gain/losses.hpp"
#include "gain/optimizer.hpp"

namespace gain {

namespace {

constexpr double kPmfTol = 1e-9;

unsigned bit(unsigned x, std::size_t i) { return (x >> i) & 1u; }

void check_pmf(const std::vector<double>& pmf, std::size_t want,
               const char* what) {
    if (pmf.size() != want) {
        throw validation_error(std::string(what) + ": expected " +
                               std::to_string(want) + " entries");
    }
    double sum = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0)) throw validation_error(std::string(what) + ": negative mass");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kPmfTol) {
        throw validation_error(std::string(what) + ": mass sums to " +
                               std::to_string(sum) + ", not 1");
    }
}

std::size_t pow3(std::size_t d) {
    std::size_t p = 1;
    for (std::size_t i = 0; i < d; ++i) p *= 3;
    return p;
}

std::size_t hint_code(const std::vector<HintTrit>& hint) {
    std::size_t code = 0, base = 1;
    for (HintTrit t : hint) {
        code += static_cast<std::size_t>(t) * base;
        base *= 3;
    }
    return code;
}

unsigned sample_discrete(const std::vector<double>& pmf, RngStream& rng) {
    const double u = rng.uniform();
    double acc = 0.0;
    for (unsigned i = 0; i < pmf.size(); ++i) {
        acc += pmf[i];
        if (u < acc) return i;
    }
    return static_cast<unsigned>(pmf.size() - 1);
}

}  // namespace

void ToySpec::validate() const {
    if (d < 1 || d > 3) throw validation_error("ToySpec: d must be in 1..3");
    const std::size_t states = 1ull << d;
    check_pmf(px, states, "ToySpec.px");
    check_pmf(pm, states, "ToySpec.pm");
}

GeneratorTable::GeneratorTable(std::size_t d) : d_(d) {
    if (d < 1 || d > 3) throw validation_error("GeneratorTable: d must be in 1..3");
    table_.resize((1ull << d) * (1ull << d));
}

void GeneratorTable::set(unsigned mask_bits, unsigned x_bits,
                         std::vector<double> pmf_over_xhat) {
    const std::size_t states = 1ull << d_;
    if (mask_bits >= states || x_bits >= states) {
        throw validation_error("GeneratorTable::set: bits out of range");
    }
    check_pmf(pmf_over_xhat, states, "GeneratorTable pmf");
    const unsigned obs = x_bits & mask_bits;
    for (unsigned xhat = 0; xhat < states; ++xhat) {
        if (pmf_over_xhat[xhat] > 0.0 && (xhat & mask_bits) != obs) {
            throw validation_error(
                "GeneratorTable::set: mass on a completion that disagrees with "
                "the observed components");
        }
    }
    table_[mask_bits * states + obs] = std::move(pmf_over_xhat);
}

double GeneratorTable::prob(unsigned mask_bits, unsigned x_bits,
                            unsigned xhat_bits) const {
    const std::size_t states = 1ull << d_;
    const auto& pmf = table_[mask_bits * states + (x_bits & mask_bits)];
    if (pmf.empty()) {
        throw validation_error("GeneratorTable: no distribution set for mask " +
                               std::to_string(mask_bits) + ", observed pattern " +
                               std::to_string(x_bits & mask_bits));
    }
    return pmf[xhat_bits];
}

const PosteriorEntry* DiscretePosteriorTable::find(
    unsigned xhat_bits, const std::vector<HintTrit>& hint) const {
    for (const auto& e : entries) {
        if (e.xhat_bits == xhat_bits && e.hint == hint) return &e;
    }
    return nullptr;
}

DiscretePosteriorTable bayes_oracle(const ToySpec& toy, const GeneratorTable& gen) {
    toy.validate();
    if (gen.dim() != toy.d) throw validation_error("bayes_oracle: dimension mismatch");

    const std::size_t d = toy.d;
    const std::size_t states = 1ull << d;
    const std::size_t hints = pow3(d);
    const double k_prob = 1.0 / static_cast<double>(d);

    // slot -> accumulated joint mass and per-component mass with m_i = 1
    struct Cell {
        double prob = 0.0;
        std::vector<double> p1;
    };
    std::vector<Cell> cells(states * hints);

    for (unsigned x = 0; x < states; ++x) {
        if (toy.px[x] == 0.0) continue;
        for (unsigned m = 0; m < states; ++m) {
            if (toy.pm[m] == 0.0) continue;
            for (std::size_t k = 0; k < d; ++k) {
                std::vector<HintTrit> hint(d);
                for (std::size_t i = 0; i < d; ++i) {
                    hint[i] = i == k ? HintTrit::half
                                     : (bit(m, i) ? HintTrit::one : HintTrit::zero);
                }
                const std::size_t hcode = hint_code(hint);
                for (unsigned xhat = 0; xhat < states; ++xhat) {
                    const double g = gen.prob(m, x, xhat);
                    if (g == 0.0) continue;
                    const double w = toy.px[x] * toy.pm[m] * k_prob * g;
                    Cell& cell = cells[xhat * hints + hcode];
                    if (cell.p1.empty()) cell.p1.assign(d, 0.0);
                    cell.prob += w;
                    for (std::size_t i = 0; i < d; ++i) {
                        if (bit(m, i)) cell.p1[i] += w;
                    }
                }
            }
        }
    }

    DiscretePosteriorTable table;
    table.d = d;
    for (unsigned xhat = 0; xhat < states; ++xhat) {
        for (std::size_t hcode = 0; hcode < hints; ++hcode) {
            const Cell& cell = cells[xhat * hints + hcode];
            if (cell.prob == 0.0) continue;
            PosteriorEntry e;
            e.xhat_bits = xhat;
            e.hint.resize(d);
            std::size_t rem = hcode;
            for (std::size_t i = 0; i < d; ++i) {
                e.hint[i] = static_cast<HintTrit>(rem % 3);
                rem /= 3;
            }
            for (std::size_t i = 0; i < d; ++i) {
                if (e.hint[i] == HintTrit::half) e.hidden_index = i;
            }
            e.prob = cell.prob;
            e.posterior.resize(d);
            for (std::size_t i = 0; i < d; ++i) e.posterior[i] = cell.p1[i] / cell.prob;
            table.entries.push_back(std::move(e));
        }
    }
    return table;
}

std::vector<double> embed_entry(const PosteriorEntry& e, std::size_t d) {
    std::vector<double> v(2 * d);
    for (std::size_t i = 0; i < d; ++i) {
        v[i] = static_cast<double>(bit(e.xhat_bits, i));
        v[d + i] = static_cast<double>(e.hint[i]) * 0.5;
    }
    return v;
}

OracleFitResult fit_discriminator_to_toy(const ToySpec& toy, const GeneratorTable& gen,
                                         const DiscretePosteriorTable& table,
                                         const OracleFitConfig& config) {
    toy.validate();
    const std::size_t d = toy.d;

    RngStream root(config.seed);
    RngStream init_rng = root.substream("init");
    RngStream sample_rng = root.substream("sample");

    std::vector<std::size_t> dims{2 * d};
    for (std::size_t h : config.hidden) dims.push_back(h);
    dims.push_back(d);
    Mlp disc = make_mlp(dims, Activation::relu, Activation::sigmoid, init_rng);

    AdamState state = AdamState::zeros_like(disc);
    const AdamHyper hp{config.learning_rate, 0.9, 0.999, 1e-8};

    const std::size_t k = config.batch;
    for (std::size_t it = 0; it < config.iterations; ++it) {
        Matrix d_in(k, 2 * d);
        Matrix mask(k, d);
        Matrix b(k, d);
        for (std::size_t r = 0; r < k; ++r) {
            const unsigned x = sample_discrete(toy.px, sample_rng);
            const unsigned m = sample_discrete(toy.pm, sample_rng);
            const auto hidden = sample_rng.uniform_index(d);
            std::vector<double> gpmf(1ull << d);
            for (unsigned xhat = 0; xhat < gpmf.size(); ++xhat) {
                gpmf[xhat] = gen.prob(m, x, xhat);
            }
            const unsigned xhat = sample_discrete(gpmf, sample_rng);
            for (std::size_t i = 0; i < d; ++i) {
                mask.at(r, i) = static_cast<double>(bit(m, i));
                b.at(r, i) = i == hidden ? 0.0 : 1.0;
                d_in.at(r, i) = static_cast<double>(bit(xhat, i));
                d_in.at(r, d + i) =
                    i == hidden ? 0.5 : static_cast<double>(bit(m, i));
            }
        }

        const ForwardTrace trace = forward(disc, d_in);
        const Matrix& m_hat = trace.output();
        Matrix d_mhat(k, d);
        for (std::size_t i = 0; i < m_hat.size(); ++i) {
            if (b.v[i] != 0.0) continue;
            const double m = mask.v[i];
            d_mhat.v[i] = -m * safe_log_grad(m_hat.v[i]) +
                          (1.0 - m) * safe_log_grad(1.0 - m_hat.v[i]);
        }
        const Gradients grads = backward(disc, trace, d_mhat);
        adam_step(disc, grads, state, hp);
    }

    OracleFitResult result;
    double mae = 0.0;
    for (const auto& e : table.entries) {
        Matrix in(1, 2 * d);
        const auto v = embed_entry(e, d);
        std::copy(v.begin(), v.end(), in.v.begin());
        const ForwardTrace trace = forward(disc, in);
        mae += e.prob * std::abs(trace.output().at(0, e.hidden_index) -
                                 e.posterior[e.hidden_index]);
    }
    result.discriminator = std::move(disc);
    result.weighted_mae = mae;
    return result;
}

ToySpec comonotone_toy(double p1) {
    ToySpec toy;
    toy.d = 2;
    toy.px = {1.0 - p1, 0.0, 0.0, p1};  // (0,0) and (1,1) only
    toy.pm = {0.0, 0.5, 0.5, 0.0};      // masks (1,0) and (0,1)
    return toy;
}

GeneratorTable copy_generator_2d() {
    GeneratorTable gen(2);
    // mask 0b01: component 0 observed; copy it into component 1.
    gen.set(0b01, 0b00, {1.0, 0.0, 0.0, 0.0});
    gen.set(0b01, 0b01, {0.0, 0.0, 0.0, 1.0});
    // mask 0b10: component 1 observed; copy it into component 0.
    gen.set(0b10, 0b00, {1.0, 0.0, 0.0, 0.0});
    gen.set(0b10, 0b10, {0.0, 0.0, 0.0, 1.0});
    return gen;
}

GeneratorTable iid_bernoulli_generator(std::size_t d, double q) {
    GeneratorTable gen(d);
    const unsigned states = 1u << d;
    for (unsigned m = 0; m < states; ++m) {
        for (unsigned obs = 0; obs < states; ++obs) {
            if ((obs & m) != obs) continue;  // obs must live inside the mask
            std::vector<double> pmf(states, 0.0);
            for (unsigned xhat = 0; xhat < states; ++xhat) {
                if ((xhat & m) != obs) continue;
                double p = 1.0;
                for (std::size_t i = 0; i < d; ++i) {
                    if (bit(m, i)) continue;
                    p *= bit(xhat, i) ? q : 1.0 - q;
                }
                pmf[xhat] = p;
            }
            gen.set(m, obs, std::move(pmf));
        }
    }
    return gen;
}

}  // namespace gain
