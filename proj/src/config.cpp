#include "gain/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gain {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw validation_error("config: " + key + ": '" + v + "' is not a number");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw validation_error("config: " + key + ": '" + v +
                               "' is not a non-negative integer");
    }
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw validation_error("config: " + key + ": '" + v + "' is not a boolean");
}

std::vector<std::string> parse_list(const std::string& v) {
    std::vector<std::string> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "dataset") dataset = value;
    else if (key == "missing_token") missing_token = value;
    else if (key == "rate") rate = parse_double(key, value);
    else if (key == "folds") folds = parse_u64(key, value);
    else if (key == "seeds") seeds = parse_u64(key, value);
    else if (key == "draws") draws = parse_u64(key, value);
    else if (key == "out_dir") out_dir = value;
    else if (key == "exact_mask") exact_mask = parse_bool(key, value);
    else if (key == "label_col") label_col = value;
    else if (key == "mask_columns") mask_columns = parse_list(value);
    else if (key == "ridge") ridge = parse_double(key, value);
    else if (key == "seed") train.seed = parse_u64(key, value);
    else if (key == "iterations") train.iterations = parse_u64(key, value);
    else if (key == "k_d") train.k_d = parse_u64(key, value);
    else if (key == "k_g") train.k_g = parse_u64(key, value);
    else if (key == "alpha") train.alpha = parse_double(key, value);
    else if (key == "learning_rate") train.learning_rate = parse_double(key, value);
    else if (key == "noise_high") train.noise_high = parse_double(key, value);
    else if (key == "variant") train.variant = variant_from_string(value);
    else if (key == "optimizer") {
        if (value == "adam") train.optimizer = OptimizerKind::adam;
        else if (value == "sgd") train.optimizer = OptimizerKind::sgd;
        else throw validation_error("config: optimizer must be adam or sgd");
    } else if (key == "hidden") {
        train.hidden.clear();
        for (const auto& item : parse_list(value)) {
            train.hidden.push_back(parse_u64(key, item));
        }
    } else {
        throw validation_error("config: unknown key '" + key + "'");
    }
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config file " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw parse_error(path + ":" + std::to_string(lineno) +
                              ": expected key=value");
        }
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

std::string RunConfig::echo() const {
    std::ostringstream out;
    out << "dataset=" << dataset << '\n';
    out << "missing_token=" << missing_token << '\n';
    out << "rate=" << rate << '\n';
    out << "folds=" << folds << '\n';
    out << "seeds=" << seeds << '\n';
    out << "draws=" << draws << '\n';
    out << "out_dir=" << out_dir << '\n';
    out << "exact_mask=" << (exact_mask ? "true" : "false") << '\n';
    out << "label_col=" << label_col << '\n';
    out << "mask_columns=";
    for (std::size_t i = 0; i < mask_columns.size(); ++i) {
        out << (i ? "," : "") << mask_columns[i];
    }
    out << '\n';
    out << "ridge=" << ridge << '\n';
    out << "seed=" << train.seed << '\n';
    out << "iterations=" << train.iterations << '\n';
    out << "k_d=" << train.k_d << '\n';
    out << "k_g=" << train.k_g << '\n';
    out << "alpha=" << train.alpha << '\n';
    out << "learning_rate=" << train.learning_rate << '\n';
    out << "noise_high=" << train.noise_high << '\n';
    out << "hidden=";
    for (std::size_t i = 0; i < train.hidden.size(); ++i) {
        out << (i ? "," : "") << train.hidden[i];
    }
    out << '\n';
    out << "variant=" << to_string(train.variant) << '\n';
    out << "optimizer=" << (train.optimizer == OptimizerKind::adam ? "adam" : "sgd")
        << '\n';
    return out.str();
}

HarnessConfig RunConfig::harness() const {
    HarnessConfig h;
    h.train = train;
    h.mcar_rate = rate;
    h.exact_mask = exact_mask;
    h.folds = folds;
    h.seeds = seeds;
    h.n_draws = draws;
    h.mask_columns = mask_columns;
    h.label_column = label_col;
    h.logistic.ridge = ridge;
    return h;
}

}  // namespace gain
