#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "streamq/grid.hpp"

namespace streamq {

/// One stream observation.
struct Sample {
    double value = 0.0;
    std::optional<double> timestamp;  // seconds, nonnegative
    std::string stream_id = "default";
};

/// Quantile estimate. `clamped` is set when the requested mass lies in the
/// underflow/overflow bins and the returned value is a grid edge.
struct QuantileResult {
    double value = 0.0;
    bool clamped = false;
};

/// Grid-binned empirical CDF: per-bin counts plus underflow/overflow,
/// with total = underflow + overflow + sum(bin_counts) at all times.
class CdfSketch {
public:
    explicit CdfSketch(Grid grid);

    static CdfSketch from_counts(Grid grid, std::vector<std::uint64_t> bin_counts,
                                 std::uint64_t underflow, std::uint64_t overflow);

    void insert(double value);

    /// Counter-wise addition / subtraction; grids must match exactly.
    void add(const CdfSketch& other);
    void subtract(const CdfSketch& other);

    /// Empirical CDF with uniform-within-bin interpolation.
    double cdf_at(double x) const;

    /// Inverse of cdf_at with linear interpolation inside the target bin.
    QuantileResult quantile(double p) const;

    CdfSketch snapshot() const { return *this; }

    const Grid& grid() const { return grid_; }
    const std::vector<std::uint64_t>& bin_counts() const { return bin_counts_; }
    std::uint64_t underflow() const { return underflow_; }
    std::uint64_t overflow() const { return overflow_; }
    std::uint64_t total() const { return total_; }
    bool empty() const { return total_ == 0; }

    bool operator==(const CdfSketch&) const = default;

private:
    Grid grid_;
    std::vector<std::uint64_t> bin_counts_;
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
    std::uint64_t total_ = 0;
};

CdfSketch merge_counts(const CdfSketch& a, const CdfSketch& b);
CdfSketch subtract_counts(const CdfSketch& a, const CdfSketch& b);

}  // namespace streamq
