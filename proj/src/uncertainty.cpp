#include "streamq/uncertainty.hpp"

#include <algorithm>
#include <cmath>

#include "streamq/errors.hpp"

namespace streamq {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
}

// Acklam's rational approximation for the normal inverse CDF,
// good to ~1e-9 relative before refinement.
double inv_normal_approx(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

Band clamp_probability_band(double center, double half_width, double confidence) {
    Band band;
    band.confidence = confidence;
    band.lo = std::max(0.0, center - half_width);
    band.hi = std::min(1.0, center + half_width);
    return band;
}

void require_confidence(double confidence) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw InvalidProbability("confidence must be in (0, 1)");
    }
}

}  // namespace

double inv_normal(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidProbability("inv_normal requires p in (0, 1)");
    }
    double z = inv_normal_approx(p);
    // two Newton steps against erfc-based Phi push the error to machine level
    for (int i = 0; i < 2; ++i) {
        const double pdf = normal_pdf(z);
        if (pdf <= 0.0) {
            break;
        }
        z -= (normal_cdf(z) - p) / pdf;
    }
    return z;
}

Band cdf_band(const CdfSketch& sketch, double x, double confidence) {
    require_confidence(confidence);
    if (sketch.empty()) {
        throw EmptySketch("cdf_band on an empty sketch");
    }
    const double f_hat = sketch.cdf_at(x);
    const double n = static_cast<double>(sketch.total());
    if (f_hat <= 0.0 || f_hat >= 1.0) {
        Band band = clamp_probability_band(f_hat, 0.0, confidence);
        band.degenerate = true;
        return band;
    }
    const double z = inv_normal((1.0 + confidence) / 2.0);
    const double half_width = z * std::sqrt(f_hat * (1.0 - f_hat) / n);
    return clamp_probability_band(f_hat, half_width, confidence);
}

Band cdf_band(const WindowEstimator& est, double x, double confidence) {
    return cdf_band(est.query_sketch(), x, confidence);
}

Band quantile_band(const CdfSketch& sketch, double p, double confidence) {
    require_confidence(confidence);
    if (sketch.empty()) {
        throw EmptySketch("quantile_band on an empty sketch");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw InvalidProbability("quantile_band requires p in (0, 1)");
    }
    const double n = static_cast<double>(sketch.total());
    const double z = inv_normal((1.0 + confidence) / 2.0);
    const double h = z * std::sqrt(p * (1.0 - p) / n);
    const QuantileResult lo = sketch.quantile(std::max(0.0, p - h));
    const QuantileResult hi = sketch.quantile(std::min(1.0, p + h));
    Band band;
    band.confidence = confidence;
    band.lo = lo.value;
    band.hi = hi.value;
    band.clamped = lo.clamped || hi.clamped;
    return band;
}

Band quantile_band(const WindowEstimator& est, double p, double confidence) {
    return quantile_band(est.query_sketch(), p, confidence);
}

}  // namespace streamq
