#include "gain/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gain {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, ptr);
}

Dataset load_csv(const std::string& path, const std::string& missing_token,
                 const std::vector<FeatureKind>& kinds) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);

    std::string line;
    if (!std::getline(in, line)) throw parse_error(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> names = split_line(line);
    const std::size_t d = names.size();

    std::vector<double> cells;
    std::vector<double> mask_cells;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
        const std::vector<std::string> fields = split_line(line);
        ++n;
        if (fields.size() != d) {
            throw parse_error(path + ": row " + std::to_string(n) + " has " +
                              std::to_string(fields.size()) + " fields, expected " +
                              std::to_string(d));
        }
        for (std::size_t j = 0; j < d; ++j) {
            const std::string& f = fields[j];
            if (f == missing_token) {
                cells.push_back(0.0);
                mask_cells.push_back(0.0);
                continue;
            }
            double value = 0.0;
            const auto [ptr, ec] =
                std::from_chars(f.data(), f.data() + f.size(), value);
            if (ec != std::errc() || ptr != f.data() + f.size()) {
                throw parse_error(path + ": row " + std::to_string(n) + ", column '" +
                                  names[j] + "': cannot parse '" + f + "' as a number");
            }
            cells.push_back(value);
            mask_cells.push_back(1.0);
        }
    }

    Matrix raw(n, d);
    raw.v = std::move(cells);
    Matrix mask(n, d);
    mask.v = std::move(mask_cells);
    return make_dataset(std::move(raw), std::move(mask), std::move(names), kinds);
}

void save_csv(const Dataset& ds, const std::string& path,
              const std::string& missing_token) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write " + path);
    for (std::size_t j = 0; j < ds.d; ++j) {
        out << ds.features[j].name << (j + 1 < ds.d ? "," : "\n");
    }
    std::ostringstream body;
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            if (ds.mask.at(i, j) == 0.0) {
                body << missing_token;
            } else {
                body << format_double(ds.raw.at(i, j));
            }
            body << (j + 1 < ds.d ? ',' : '\n');
        }
    }
    out << body.str();
}

void save_mask_csv(const Dataset& ds, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write " + path);
    for (std::size_t j = 0; j < ds.d; ++j) {
        out << ds.features[j].name << (j + 1 < ds.d ? "," : "\n");
    }
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.d; ++j) {
            out << (ds.mask.at(i, j) == 0.0 ? '0' : '1') << (j + 1 < ds.d ? ',' : '\n');
        }
    }
}

}  // namespace gain
