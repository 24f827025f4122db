#include "gain/checks.hpp"

#include <algorithm>
#include <cmath>

#include "gain/gain.hpp"

namespace gain {

namespace {

double rel_err(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Runs the two forward passes of a training step and reports whether any
// relu pre-activation sits within the finite-difference step of its kink.
bool batch_near_kink(const Generator& gen, const Discriminator& disc,
                     const MiniBatch& batch) {
    const std::size_t rows = batch.values.rows;
    const std::size_t d = batch.values.cols;
    Matrix g_in(rows, 2 * d);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < d; ++j) {
            g_in.at(r, j) = batch.values.at(r, j) + batch.noise.at(r, j);
            g_in.at(r, d + j) = batch.mask.at(r, j);
        }
    }
    const ForwardTrace g_trace = forward(gen.net, g_in);
    if (near_relu_kink(gen.net, g_trace, 1e-4)) return true;

    Matrix d_in(rows, 2 * d);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < d; ++j) {
            const double m = batch.mask.at(r, j);
            d_in.at(r, j) = m * batch.values.at(r, j) +
                            (1.0 - m) * g_trace.output().at(r, j);
            d_in.at(r, d + j) = batch.hint.at(r, j);
        }
    }
    const ForwardTrace d_trace = forward(disc.net, d_in);
    return near_relu_kink(disc.net, d_trace, 1e-4);
}

void compare(const Gradients& analytic, const Gradients& numeric, double rel_tol,
             double grad_floor, GradCheckReport& rep, bool& case_failed) {
    for (std::size_t li = 0; li < analytic.layers.size(); ++li) {
        const auto check = [&](double a, double n) {
            if (std::max(std::abs(a), std::abs(n)) <= grad_floor) return;
            rep.params_checked += 1;
            const double e = rel_err(a, n);
            rep.max_rel_err = std::max(rep.max_rel_err, e);
            if (e > rel_tol) case_failed = true;
        };
        for (std::size_t j = 0; j < analytic.layers[li].w.size(); ++j) {
            check(analytic.layers[li].w.v[j], numeric.layers[li].w.v[j]);
        }
        for (std::size_t j = 0; j < analytic.layers[li].b.size(); ++j) {
            check(analytic.layers[li].b[j], numeric.layers[li].b[j]);
        }
    }
}

}  // namespace

GradCheckReport run_gain_gradient_suite(std::size_t cases, std::uint64_t seed,
                                        double rel_tol, double grad_floor,
                                        bool corrupt_one) {
    GradCheckReport rep;
    RngStream root(seed);
    for (std::size_t c = 0; c < cases; ++c) {
        RngStream rng = root.substream("gain-case", c);

        const std::size_t d = 2 + rng.uniform_index(3);
        const std::size_t hidden = 3 + rng.uniform_index(4);
        const std::size_t rows = 1 + rng.uniform_index(4);
        const double alpha = rng.uniform(0.0, 20.0);

        Generator gen{make_mlp({2 * d, hidden, d}, Activation::relu,
                               Activation::sigmoid, rng)};
        Discriminator disc{make_mlp({2 * d, hidden, d}, Activation::relu,
                                    Activation::sigmoid, rng)};
        for (auto* net : {&gen.net, &disc.net}) {
            for (auto& layer : net->layers) {
                for (double& x : layer.b) x = rng.uniform(-0.3, 0.3);
            }
        }

        std::vector<FeatureSpec> features(d);
        for (std::size_t j = 0; j < d; ++j) {
            features[j].name = "f" + std::to_string(j);
            features[j].kind = rng.uniform() < 0.25 ? FeatureKind::binary
                                                    : FeatureKind::continuous;
        }

        MiniBatch batch;
        batch.values = Matrix(rows, d);
        batch.mask = Matrix(rows, d);
        batch.noise = Matrix(rows, d);
        batch.b = Matrix(rows, d);
        batch.hint = Matrix(rows, d);
        const bool informative = rng.uniform() < 0.8;
        for (int tries = 0; tries < 50; ++tries) {
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t j = 0; j < d; ++j) {
                    batch.mask.at(r, j) = rng.uniform() < 0.5 ? 1.0 : 0.0;
                    const double raw = features[j].kind == FeatureKind::binary
                                           ? (rng.uniform() < 0.5 ? 1.0 : 0.0)
                                           : rng.uniform();
                    batch.values.at(r, j) = batch.mask.at(r, j) * raw;
                }
                const auto z = sample_noise({batch.mask.row(r), d}, rng, 0.5);
                std::copy(z.begin(), z.end(), batch.noise.row(r));
                const HintDraw draw = informative
                                          ? sample_hint({batch.mask.row(r), d}, rng)
                                          : uninformative_hint(d);
                std::copy(draw.b.begin(), draw.b.end(), batch.b.row(r));
                std::copy(draw.h.begin(), draw.h.end(), batch.hint.row(r));
            }
            if (!batch_near_kink(gen, disc, batch)) break;
        }

        bool case_failed = false;

        // Discriminator objective vs finite differences on D parameters.
        Gradients d_analytic;
        discriminator_loss_and_grads(gen, disc, batch, &d_analytic);
        if (corrupt_one) d_analytic.layers[0].w.v[0] += 0.5;
        const Gradients d_numeric = finite_diff_grad(
            [&](const Mlp& m) {
                const Discriminator probe{m};
                return discriminator_loss_and_grads(gen, probe, batch, nullptr);
            },
            disc.net, 1e-5);
        compare(d_analytic, d_numeric, rel_tol, grad_floor, rep, case_failed);

        // Composite generator objective vs finite differences on G parameters.
        Gradients g_analytic;
        generator_loss_and_grads(gen, disc, batch, features, alpha, true, true,
                                 &g_analytic, nullptr, nullptr);
        const Gradients g_numeric = finite_diff_grad(
            [&](const Mlp& m) {
                const Generator probe{m};
                return generator_loss_and_grads(probe, disc, batch, features, alpha,
                                                true, true, nullptr, nullptr,
                                                nullptr);
            },
            gen.net, 1e-5);
        compare(g_analytic, g_numeric, rel_tol, grad_floor, rep, case_failed);

        rep.cases += 1;
        if (case_failed) {
            rep.failed_cases += 1;
            rep.failures.push_back("gain case " + std::to_string(c));
        }
    }
    return rep;
}

}  // namespace gain
