#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace streamq {

/// Where a value lands on a grid.
struct BinLocation {
    enum class Kind { underflow, in_range, overflow };
    Kind kind = Kind::in_range;
    std::size_t bin = 0;  // valid only when kind == in_range

    bool operator==(const BinLocation&) const = default;
};

/// Ordered bin edges defining the value resolution of a sketch.
/// Bins are half-open [edges[k], edges[k+1]); values >= the last edge
/// overflow, values < the first edge underflow.
class Grid {
public:
    enum class Kind { uniform, tail_weighted };

    static Grid uniform(double min, double max, std::size_t bins);

    // Piecewise-uniform grid with three segments [min,lo_split),
    // [lo_split,hi_split), [hi_split,max). Each segment gets
    // floor(share*bins) bins, remainder bins go to the middle segment.
    // Tail segments are intended to get narrower bins than the middle.
    static Grid tail_weighted(double min, double max, std::size_t bins,
                              double lo_split, double hi_split,
                              const std::array<double, 3>& shares);

    const std::vector<double>& edges() const { return edges_; }
    Kind kind() const { return kind_; }
    std::size_t bin_count() const { return edges_.size() - 1; }
    double min() const { return edges_.front(); }
    double max() const { return edges_.back(); }

    /// Locates a finite value; throws NonFiniteValue otherwise.
    BinLocation locate(double value) const;

    bool operator==(const Grid&) const = default;

private:
    Grid(std::vector<double> edges, Kind kind);

    std::vector<double> edges_;
    Kind kind_;
};

}  // namespace streamq
