#pragma once

#include <cstdint>
#include <deque>

#include "streamq/sketch.hpp"

namespace streamq {

/// Sliding-window shape: the window holds `window_samples` observations,
/// advanced in blocks of `block_samples`. window_samples must be an exact
/// multiple k >= 2 of block_samples, so evicting the oldest block always
/// leaves a nonempty kept region.
struct WindowConfig {
    std::uint64_t window_samples = 0;
    std::uint64_t block_samples = 0;
};

/// Moving-window CDF estimator. Keeps a ring of per-block histograms plus a
/// staging histogram for the forming block; the aggregate is updated at each
/// block boundary by adding the new block and subtracting the evicted one,
/// never by rescanning the window.
class WindowEstimator {
public:
    WindowEstimator(WindowConfig config, Grid grid);

    void push(double value);

    /// Queries cover the ring plus the staging block, normalized by the
    /// actual current count.
    double cdf_at(double x) const;
    QuantileResult quantile(double p) const;

    /// Immutable snapshot of the current window contents as one sketch.
    CdfSketch query_sketch() const;

    /// min(1, samples_seen / window_samples)
    double fill_level() const;

    std::uint64_t samples_seen() const { return samples_seen_; }
    /// Number of samples currently inside the window (ring + staging).
    std::uint64_t sample_count() const {
        return aggregate_.total() + staging_.total();
    }
    const WindowConfig& config() const { return config_; }
    const Grid& grid() const { return aggregate_.grid(); }

    // test visibility
    const CdfSketch& aggregate() const { return aggregate_; }
    const CdfSketch& staging() const { return staging_; }
    const std::deque<CdfSketch>& blocks() const { return ring_; }

private:
    void advance_block();

    WindowConfig config_;
    std::uint64_t ring_capacity_;  // k = W / B
    std::deque<CdfSketch> ring_;
    CdfSketch staging_;
    CdfSketch aggregate_;
    std::uint64_t samples_seen_ = 0;
};

}  // namespace streamq
