#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <vector>

#include "streamq/sketch.hpp"

namespace streamq::reference {

// Deliberately naive oracles for tests: sort-based quantiles and
// from-scratch window histograms. Not exposed by the CLI.

/// Type-1 (inverted CDF) sample quantile: the smallest sorted value whose
/// empirical CDF reaches p. p = 0 returns the minimum.
double exact_quantile(std::span<const double> values, double p);

/// One-pass direct binning of the given values onto the grid.
CdfSketch exact_window_counts(std::span<const double> values, const Grid& grid);

/// Raw samples of the current window in arrival order.
class ExactWindow {
public:
    explicit ExactWindow(std::size_t capacity) : capacity_(capacity) {}

    void push(double value) {
        if (values_.size() == capacity_) {
            values_.pop_front();
        }
        values_.push_back(value);
    }

    std::vector<double> values() const {
        return {values_.begin(), values_.end()};
    }
    std::size_t size() const { return values_.size(); }

private:
    std::size_t capacity_;
    std::deque<double> values_;
};

}  // namespace streamq::reference
