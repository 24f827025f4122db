#include "gain/serialize.hpp"

#include <cstring>
#include <fstream>

#include "gain/csv.hpp"

namespace gain {

namespace {

constexpr char kMagic[8] = {'G', 'A', 'I', 'N', 'M', 'D', 'L', '1'};

void put_u64(std::ostream& out, std::uint64_t x) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((x >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

void put_f64(std::ostream& out, double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, 8);
    put_u64(out, bits);
}

void put_string(std::ostream& out, const std::string& s) {
    put_u64(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::uint64_t get_u64(std::istream& in) {
    char buf[8];
    in.read(buf, 8);
    if (!in) throw parse_error("model file truncated");
    std::uint64_t x = 0;
    for (int i = 0; i < 8; ++i) {
        x |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    }
    return x;
}

double get_f64(std::istream& in) {
    const std::uint64_t bits = get_u64(in);
    double x;
    std::memcpy(&x, &bits, 8);
    return x;
}

std::string get_string(std::istream& in) {
    const std::uint64_t len = get_u64(in);
    if (len > (1ull << 20)) throw parse_error("model file: implausible string length");
    std::string s(len, '\0');
    in.read(s.data(), static_cast<std::streamsize>(len));
    if (!in) throw parse_error("model file truncated");
    return s;
}

void put_net(std::ostream& out, const Mlp& net) {
    put_u64(out, net.layers.size());
    for (const auto& l : net.layers) {
        put_u64(out, l.w.rows);
        put_u64(out, l.w.cols);
        put_u64(out, static_cast<std::uint64_t>(l.act));
        for (double x : l.w.v) put_f64(out, x);
        for (double x : l.b) put_f64(out, x);
    }
}

Mlp get_net(std::istream& in) {
    Mlp net;
    const std::uint64_t n_layers = get_u64(in);
    if (n_layers == 0 || n_layers > 64) throw parse_error("model file: bad layer count");
    for (std::uint64_t i = 0; i < n_layers; ++i) {
        DenseLayer l;
        const std::uint64_t rows = get_u64(in);
        const std::uint64_t cols = get_u64(in);
        const std::uint64_t act = get_u64(in);
        if (act > 2) throw parse_error("model file: bad activation tag");
        l.w = Matrix(rows, cols);
        l.act = static_cast<Activation>(act);
        for (double& x : l.w.v) x = get_f64(in);
        l.b.resize(cols);
        for (double& x : l.b) x = get_f64(in);
        net.layers.push_back(std::move(l));
    }
    net.validate();
    return net;
}

}  // namespace

void save_model(const GainModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot write " + path);
    out.write(kMagic, 8);

    const TrainConfig& c = model.config;
    put_u64(out, c.k_d);
    put_u64(out, c.k_g);
    put_f64(out, c.alpha);
    put_u64(out, c.iterations);
    put_f64(out, c.learning_rate);
    put_f64(out, c.noise_high);
    put_u64(out, c.hidden.size());
    for (std::size_t h : c.hidden) put_u64(out, h);
    put_u64(out, c.seed);
    put_u64(out, static_cast<std::uint64_t>(c.variant));
    put_u64(out, static_cast<std::uint64_t>(c.optimizer));

    put_u64(out, model.features.size());
    for (const auto& f : model.features) {
        put_string(out, f.name);
        put_u64(out, f.kind == FeatureKind::binary ? 1 : 0);
        put_f64(out, f.observed_min);
        put_f64(out, f.observed_max);
        put_u64(out, f.constant ? 1 : 0);
    }

    put_net(out, model.generator.net);
    put_net(out, model.discriminator.net);
    if (!out) throw parse_error("write failed: " + path);
}

GainModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kMagic, 8) != 0) {
        throw parse_error(path + ": not a model file (bad magic)");
    }

    GainModel model;
    TrainConfig& c = model.config;
    c.k_d = get_u64(in);
    c.k_g = get_u64(in);
    c.alpha = get_f64(in);
    c.iterations = get_u64(in);
    c.learning_rate = get_f64(in);
    c.noise_high = get_f64(in);
    const std::uint64_t nh = get_u64(in);
    if (nh > 64) throw parse_error("model file: bad hidden layer count");
    c.hidden.resize(nh);
    for (auto& h : c.hidden) h = get_u64(in);
    c.seed = get_u64(in);
    const std::uint64_t variant = get_u64(in);
    if (variant > 4) throw parse_error("model file: bad variant tag");
    c.variant = static_cast<GainVariant>(variant);
    const std::uint64_t opt = get_u64(in);
    if (opt > 1) throw parse_error("model file: bad optimizer tag");
    c.optimizer = static_cast<OptimizerKind>(opt);

    const std::uint64_t nf = get_u64(in);
    if (nf == 0 || nf > (1ull << 20)) throw parse_error("model file: bad feature count");
    model.features.resize(nf);
    for (auto& f : model.features) {
        f.name = get_string(in);
        f.kind = get_u64(in) == 1 ? FeatureKind::binary : FeatureKind::continuous;
        f.observed_min = get_f64(in);
        f.observed_max = get_f64(in);
        f.constant = get_u64(in) == 1;
    }

    model.generator.net = get_net(in);
    model.discriminator.net = get_net(in);
    return model;
}

void save_loss_history(const GainModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write " + path);
    out << "iteration,d_loss,g_adv_loss,g_recon_loss\n";
    for (std::size_t i = 0; i < model.history.size(); ++i) {
        const auto& r = model.history[i];
        out << i << ',' << format_double(r.d_loss) << ',' << format_double(r.g_adv)
            << ',' << format_double(r.g_recon) << '\n';
    }
}

}  // namespace gain
