#include "gain/matrix.hpp"

#include <cmath>
#include <string>

namespace gain {

bool Matrix::all_finite() const {
    for (double x : v) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

void Matrix::require_shape(std::size_t r, std::size_t c, const char* what) const {
    if (rows != r || cols != c) {
        throw shape_error(std::string(what) + ": expected " + std::to_string(r) +
                          "x" + std::to_string(c) + ", got " + std::to_string(rows) +
                          "x" + std::to_string(cols));
    }
}

}  // namespace gain
