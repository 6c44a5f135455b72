#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "streamq/sketch.hpp"
#include "streamq/uncertainty.hpp"
#include "streamq/window.hpp"

namespace streamq {

enum class Comparator { greater, less, greater_eq, less_eq };

/// Threshold rule on a single quantile, e.g. "p99 > 250".
struct AlertRule {
    double p = 0.0;  // in (0, 1)
    Comparator cmp = Comparator::greater;
    double threshold = 0.0;
    std::string rule_id;
};

struct FiredAlert {
    std::string rule_id;
    double observed = 0.0;
    double threshold = 0.0;
};

struct ReportQuantile {
    double p = 0.0;
    double value = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    bool clamped = false;
};

struct Report {
    std::string stream_id;
    std::uint64_t n = 0;
    double fill = 0.0;
    std::vector<ReportQuantile> quantiles;
    std::vector<FiredAlert> alerts;
    std::uint64_t skipped = 0;
    bool iid_assumed = true;
    double timestamp = 0.0;  // emission time, seconds; not serialized
};

bool compare(double observed, Comparator cmp, double threshold);

/// A rule fires iff its comparator holds for the point quantile estimate.
/// An empty sketch yields no alerts (warm-up).
std::vector<FiredAlert> evaluate_rules(const CdfSketch& snapshot,
                                       const std::vector<AlertRule>& rules);
std::vector<FiredAlert> evaluate_rules(const WindowEstimator& est,
                                       const std::vector<AlertRule>& rules);

/// Builds a report where quantiles, bands and alerts all come from the one
/// snapshot passed in. `suppress_alerts` is the warm-up gate.
Report emit_report(const CdfSketch& snapshot, const std::string& stream_id,
                   double fill, const std::vector<double>& requested_quantiles,
                   double confidence, const std::vector<AlertRule>& rules,
                   bool suppress_alerts = false);
Report emit_report(const WindowEstimator& est, const std::string& stream_id,
                   const std::vector<double>& requested_quantiles,
                   double confidence, const std::vector<AlertRule>& rules,
                   bool warmup_gate = true);

}  // namespace streamq
