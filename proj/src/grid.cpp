#include "streamq/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "streamq/errors.hpp"

namespace streamq {

namespace {

// Fill [lo, hi) with n equal-width bins, appending n edges starting at lo.
void append_segment_edges(std::vector<double>& edges, double lo, double hi,
                          std::size_t n) {
    const double width = (hi - lo) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        edges.push_back(lo + width * static_cast<double>(i));
    }
}

}  // namespace

Grid::Grid(std::vector<double> edges, Kind kind)
    : edges_(std::move(edges)), kind_(kind) {}

Grid Grid::uniform(double min, double max, std::size_t bins) {
    if (!std::isfinite(min) || !std::isfinite(max) || min >= max) {
        throw InvalidRange("uniform grid requires finite min < max");
    }
    if (bins == 0) {
        throw InvalidRange("uniform grid requires at least one bin");
    }
    std::vector<double> edges;
    edges.reserve(bins + 1);
    append_segment_edges(edges, min, max, bins);
    edges.push_back(max);
    return Grid(std::move(edges), Kind::uniform);
}

Grid Grid::tail_weighted(double min, double max, std::size_t bins,
                         double lo_split, double hi_split,
                         const std::array<double, 3>& shares) {
    if (!std::isfinite(min) || !std::isfinite(max) ||
        !std::isfinite(lo_split) || !std::isfinite(hi_split) ||
        !(min < lo_split && lo_split < hi_split && hi_split < max)) {
        throw InvalidRange(
            "tail-weighted grid requires min < lo_split < hi_split < max");
    }
    const double share_sum = shares[0] + shares[1] + shares[2];
    if (std::abs(share_sum - 1.0) > 1e-9 ||
        !std::all_of(shares.begin(), shares.end(),
                     [](double s) { return s > 0.0; })) {
        throw InvalidShares("segment shares must be positive and sum to 1");
    }

    const std::size_t lo_bins =
        static_cast<std::size_t>(std::floor(shares[0] * static_cast<double>(bins)));
    const std::size_t hi_bins =
        static_cast<std::size_t>(std::floor(shares[2] * static_cast<double>(bins)));
    if (lo_bins == 0 || hi_bins == 0 || lo_bins + hi_bins >= bins) {
        throw InvalidShares("every segment must receive at least one bin");
    }
    const std::size_t mid_bins = bins - lo_bins - hi_bins;

    std::vector<double> edges;
    edges.reserve(bins + 1);
    append_segment_edges(edges, min, lo_split, lo_bins);
    append_segment_edges(edges, lo_split, hi_split, mid_bins);
    append_segment_edges(edges, hi_split, max, hi_bins);
    edges.push_back(max);
    return Grid(std::move(edges), Kind::tail_weighted);
}

BinLocation Grid::locate(double value) const {
    if (!std::isfinite(value)) {
        throw NonFiniteValue("cannot locate a non-finite value");
    }
    if (value < edges_.front()) {
        return {BinLocation::Kind::underflow, 0};
    }
    if (value >= edges_.back()) {
        return {BinLocation::Kind::overflow, 0};
    }
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
    const auto idx = static_cast<std::size_t>(it - edges_.begin());
    return {BinLocation::Kind::in_range, idx - 1};
}

}  // namespace streamq
