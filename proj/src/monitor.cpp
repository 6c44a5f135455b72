#include "streamq/monitor.hpp"

#include <chrono>

#include "streamq/errors.hpp"

namespace streamq {

namespace {

double now_seconds() {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    return std::chrono::duration<double>(now).count();
}

}  // namespace

bool compare(double observed, Comparator cmp, double threshold) {
    switch (cmp) {
        case Comparator::greater: return observed > threshold;
        case Comparator::less: return observed < threshold;
        case Comparator::greater_eq: return observed >= threshold;
        case Comparator::less_eq: return observed <= threshold;
    }
    return false;
}

std::vector<FiredAlert> evaluate_rules(const CdfSketch& snapshot,
                                       const std::vector<AlertRule>& rules) {
    std::vector<FiredAlert> fired;
    if (snapshot.empty()) {
        return fired;
    }
    for (const AlertRule& rule : rules) {
        const double observed = snapshot.quantile(rule.p).value;
        if (compare(observed, rule.cmp, rule.threshold)) {
            fired.push_back({rule.rule_id, observed, rule.threshold});
        }
    }
    return fired;
}

std::vector<FiredAlert> evaluate_rules(const WindowEstimator& est,
                                       const std::vector<AlertRule>& rules) {
    return evaluate_rules(est.query_sketch(), rules);
}

Report emit_report(const CdfSketch& snapshot, const std::string& stream_id,
                   double fill, const std::vector<double>& requested_quantiles,
                   double confidence, const std::vector<AlertRule>& rules,
                   bool suppress_alerts) {
    Report report;
    report.stream_id = stream_id;
    report.n = snapshot.total();
    report.fill = fill;
    report.timestamp = now_seconds();
    if (!snapshot.empty()) {
        for (double p : requested_quantiles) {
            const QuantileResult q = snapshot.quantile(p);
            const Band band = quantile_band(snapshot, p, confidence);
            report.quantiles.push_back(
                {p, q.value, band.lo, band.hi, q.clamped || band.clamped});
        }
        if (!suppress_alerts) {
            report.alerts = evaluate_rules(snapshot, rules);
        }
    }
    return report;
}

Report emit_report(const WindowEstimator& est, const std::string& stream_id,
                   const std::vector<double>& requested_quantiles,
                   double confidence, const std::vector<AlertRule>& rules,
                   bool warmup_gate) {
    const CdfSketch snapshot = est.query_sketch();
    const double fill = est.fill_level();
    const bool suppress = warmup_gate && fill < 1.0;
    return emit_report(snapshot, stream_id, fill, requested_quantiles,
                       confidence, rules, suppress);
}

}  // namespace streamq
