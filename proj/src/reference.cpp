#include "streamq/reference.hpp"

#include <algorithm>
#include <cmath>

#include "streamq/errors.hpp"

namespace streamq::reference {

double exact_quantile(std::span<const double> values, double p) {
    if (values.empty()) {
        throw EmptyInput("exact_quantile on an empty list");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidProbability("exact_quantile probability must be in [0, 1]");
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    if (p == 0.0) {
        return sorted.front();
    }
    const double n = static_cast<double>(sorted.size());
    const auto rank = static_cast<std::size_t>(std::ceil(p * n));
    return sorted[std::min(rank, sorted.size()) - 1];
}

CdfSketch exact_window_counts(std::span<const double> values, const Grid& grid) {
    CdfSketch sketch(grid);
    for (double v : values) {
        sketch.insert(v);
    }
    return sketch;
}

}  // namespace streamq::reference
