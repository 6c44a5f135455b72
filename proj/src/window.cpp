#include "streamq/window.hpp"

#include <algorithm>
#include <utility>

#include "streamq/errors.hpp"

namespace streamq {

WindowEstimator::WindowEstimator(WindowConfig config, Grid grid)
    : config_(config),
      ring_capacity_(0),
      staging_(grid),
      aggregate_(std::move(grid)) {
    if (config_.block_samples == 0 || config_.window_samples == 0 ||
        config_.window_samples % config_.block_samples != 0) {
        throw InvalidWindowConfig(
            "window size must be a positive multiple of the block size");
    }
    ring_capacity_ = config_.window_samples / config_.block_samples;
    if (ring_capacity_ < 2) {
        throw InvalidWindowConfig(
            "window must span at least two blocks");
    }
}

void WindowEstimator::push(double value) {
    staging_.insert(value);
    ++samples_seen_;
    if (staging_.total() == config_.block_samples) {
        advance_block();
    }
}

void WindowEstimator::advance_block() {
    aggregate_.add(staging_);
    ring_.push_back(std::move(staging_));
    staging_ = CdfSketch(aggregate_.grid());
    if (ring_.size() > ring_capacity_) {
        aggregate_.subtract(ring_.front());
        ring_.pop_front();
    }
}

CdfSketch WindowEstimator::query_sketch() const {
    if (staging_.empty()) {
        return aggregate_;
    }
    return merge_counts(aggregate_, staging_);
}

double WindowEstimator::cdf_at(double x) const {
    if (sample_count() == 0) {
        throw EmptySketch("no samples in the window");
    }
    return query_sketch().cdf_at(x);
}

QuantileResult WindowEstimator::quantile(double p) const {
    if (sample_count() == 0) {
        throw EmptySketch("no samples in the window");
    }
    return query_sketch().quantile(p);
}

double WindowEstimator::fill_level() const {
    const double frac = static_cast<double>(samples_seen_) /
                        static_cast<double>(config_.window_samples);
    return std::min(1.0, frac);
}

}  // namespace streamq
