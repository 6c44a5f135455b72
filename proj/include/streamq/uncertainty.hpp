#pragma once

#include "streamq/sketch.hpp"
#include "streamq/window.hpp"

namespace streamq {

/// Confidence band built from the binomial variance F(1-F)/n. Only valid
/// under an i.i.d. sampling assumption, which real systems rarely satisfy;
/// the flag travels with the band so reports can surface it.
struct Band {
    double lo = 0.0;
    double hi = 0.0;
    double confidence = 0.0;
    bool iid_assumed = true;
    bool degenerate = false;  // F-hat was exactly 0 or 1
    bool clamped = false;     // an endpoint hit the grid range
};

/// Standard normal quantile, |Phi(z) - p| <= 1e-8.
double inv_normal(double p);

/// F-hat +/- z*sqrt(F-hat*(1 - F-hat)/n), clamped to [0, 1].
Band cdf_band(const CdfSketch& sketch, double x, double confidence);
Band cdf_band(const WindowEstimator& est, double x, double confidence);

/// The CDF band inverted through the estimated quantile function:
/// [quantile(p - h), quantile(p + h)] with h = z*sqrt(p*(1-p)/n).
Band quantile_band(const CdfSketch& sketch, double p, double confidence);
Band quantile_band(const WindowEstimator& est, double p, double confidence);

}  // namespace streamq
