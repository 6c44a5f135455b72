#include "streamq/sketch.hpp"

#include <cmath>
#include <limits>

#include "streamq/errors.hpp"

namespace streamq {

namespace {

constexpr std::uint64_t kMaxCount = std::numeric_limits<std::uint64_t>::max();

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    if (a > kMaxCount - b) {
        throw CountSaturation("counter addition would overflow");
    }
    return a + b;
}

std::uint64_t checked_sub(std::uint64_t a, std::uint64_t b) {
    if (b > a) {
        throw NegativeCount("counter subtraction would go negative");
    }
    return a - b;
}

}  // namespace

CdfSketch::CdfSketch(Grid grid)
    : grid_(std::move(grid)), bin_counts_(grid_.bin_count(), 0) {}

CdfSketch CdfSketch::from_counts(Grid grid, std::vector<std::uint64_t> bin_counts,
                                 std::uint64_t underflow, std::uint64_t overflow) {
    if (bin_counts.size() != grid.bin_count()) {
        throw GridMismatch("bin count vector does not match the grid");
    }
    CdfSketch s(std::move(grid));
    s.bin_counts_ = std::move(bin_counts);
    s.underflow_ = underflow;
    s.overflow_ = overflow;
    std::uint64_t total = checked_add(underflow, overflow);
    for (std::uint64_t c : s.bin_counts_) {
        total = checked_add(total, c);
    }
    s.total_ = total;
    return s;
}

void CdfSketch::insert(double value) {
    const BinLocation loc = grid_.locate(value);
    if (total_ == kMaxCount) {
        throw CountSaturation("sketch is at counter capacity");
    }
    switch (loc.kind) {
        case BinLocation::Kind::underflow:
            ++underflow_;
            break;
        case BinLocation::Kind::overflow:
            ++overflow_;
            break;
        case BinLocation::Kind::in_range:
            ++bin_counts_[loc.bin];
            break;
    }
    ++total_;
}

void CdfSketch::add(const CdfSketch& other) {
    if (grid_ != other.grid_) {
        throw GridMismatch("cannot add sketches over different grids");
    }
    // validate first so a throw leaves *this unchanged
    checked_add(total_, other.total_);
    underflow_ = checked_add(underflow_, other.underflow_);
    overflow_ = checked_add(overflow_, other.overflow_);
    for (std::size_t k = 0; k < bin_counts_.size(); ++k) {
        bin_counts_[k] = checked_add(bin_counts_[k], other.bin_counts_[k]);
    }
    total_ += other.total_;
}

void CdfSketch::subtract(const CdfSketch& other) {
    if (grid_ != other.grid_) {
        throw GridMismatch("cannot subtract sketches over different grids");
    }
    checked_sub(underflow_, other.underflow_);
    checked_sub(overflow_, other.overflow_);
    checked_sub(total_, other.total_);
    for (std::size_t k = 0; k < bin_counts_.size(); ++k) {
        checked_sub(bin_counts_[k], other.bin_counts_[k]);
    }
    underflow_ -= other.underflow_;
    overflow_ -= other.overflow_;
    total_ -= other.total_;
    for (std::size_t k = 0; k < bin_counts_.size(); ++k) {
        bin_counts_[k] -= other.bin_counts_[k];
    }
}

double CdfSketch::cdf_at(double x) const {
    if (!std::isfinite(x)) {
        throw NonFiniteValue("cdf_at requires a finite query point");
    }
    if (total_ == 0) {
        throw EmptySketch("cdf_at on an empty sketch");
    }
    const auto& edges = grid_.edges();
    if (x < edges.front()) {
        // underflow mass sits below the grid; it is all we know about (-inf, min)
        return static_cast<double>(underflow_) / static_cast<double>(total_);
    }
    if (x >= edges.back()) {
        return 1.0;
    }
    const BinLocation loc = grid_.locate(x);
    double below = static_cast<double>(underflow_);
    for (std::size_t k = 0; k < loc.bin; ++k) {
        below += static_cast<double>(bin_counts_[k]);
    }
    const double width = edges[loc.bin + 1] - edges[loc.bin];
    const double frac = (x - edges[loc.bin]) / width;
    below += static_cast<double>(bin_counts_[loc.bin]) * frac;
    return below / static_cast<double>(total_);
}

QuantileResult CdfSketch::quantile(double p) const {
    if (total_ == 0) {
        throw EmptySketch("quantile on an empty sketch");
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidProbability("quantile probability must be in [0, 1]");
    }
    const auto& edges = grid_.edges();
    if (p == 0.0) {
        if (underflow_ > 0) {
            return {edges.front(), true};
        }
        for (std::size_t k = 0; k < bin_counts_.size(); ++k) {
            if (bin_counts_[k] > 0) {
                return {edges[k], false};
            }
        }
        return {edges.back(), true};  // only overflow mass
    }
    const double target = p * static_cast<double>(total_);
    double cum = static_cast<double>(underflow_);
    if (underflow_ > 0 && target <= cum) {
        return {edges.front(), true};
    }
    for (std::size_t k = 0; k < bin_counts_.size(); ++k) {
        const double c = static_cast<double>(bin_counts_[k]);
        if (c > 0.0 && target <= cum + c) {
            const double width = edges[k + 1] - edges[k];
            return {edges[k] + width * (target - cum) / c, false};
        }
        cum += c;
    }
    return {edges.back(), true};  // target mass lies in overflow
}

CdfSketch merge_counts(const CdfSketch& a, const CdfSketch& b) {
    CdfSketch out = a;
    out.add(b);
    return out;
}

CdfSketch subtract_counts(const CdfSketch& a, const CdfSketch& b) {
    CdfSketch out = a;
    out.subtract(b);
    return out;
}

}  // namespace streamq
