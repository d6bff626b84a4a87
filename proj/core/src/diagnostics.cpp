#include "spurious/diagnostics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "spurious/errors.hpp"

namespace spurious {

namespace {

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

double durbin_watson(std::span<const double> residuals) {
    if (residuals.size() < 2) throw ParameterError("durbin_watson: need at least 2 residuals");
    double num = 0.0;
    double den = residuals[0] * residuals[0];
    for (std::size_t t = 1; t < residuals.size(); ++t) {
        const double d = residuals[t] - residuals[t - 1];
        num += d * d;
        den += residuals[t] * residuals[t];
    }
    if (!(den > 0.0)) throw DegenerateError("durbin_watson: residuals are all zero");
    return num / den;
}

double ljung_box(std::span<const double> residuals, std::size_t lags) {
    const std::size_t T = residuals.size();
    if (lags < 1) throw ParameterError("ljung_box: lags must be >= 1");
    if (T <= lags) throw ParameterError("ljung_box: need more than " + std::to_string(lags) + " residuals");
    const double m = mean_of(residuals);
    double c0 = 0.0;
    for (double e : residuals) c0 += (e - m) * (e - m);
    if (!(c0 > 0.0)) throw DegenerateError("ljung_box: residuals have zero variance");

    double q = 0.0;
    for (std::size_t j = 1; j <= lags; ++j) {
        double cj = 0.0;
        for (std::size_t t = j; t < T; ++t) cj += (residuals[t] - m) * (residuals[t - j] - m);
        const double r = cj / c0;
        q += r * r / static_cast<double>(T - j);
    }
    const double Td = static_cast<double>(T);
    return Td * (Td + 2.0) * q;
}

double jarque_bera(std::span<const double> sample) {
    if (sample.size() < 4) throw ParameterError("jarque_bera: need at least 4 observations");
    const double n = static_cast<double>(sample.size());
    const double m = mean_of(sample);
    double m2 = 0.0;
    double m3 = 0.0;
    double m4 = 0.0;
    for (double v : sample) {
        const double d = v - m;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) throw DegenerateError("jarque_bera: sample has zero variance");
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    return n / 6.0 * (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
}

double adjusted_r2(std::span<const double> residuals, std::span<const double> y, std::size_t k) {
    const std::size_t T = y.size();
    if (residuals.size() != T) throw ParameterError("adjusted_r2: residual and response lengths differ");
    if (T <= k) throw DegreesOfFreedomError("adjusted_r2: need T > k");
    if (T < 2) throw ParameterError("adjusted_r2: need at least 2 observations");
    const double m = mean_of(y);
    double tss = 0.0;
    for (double v : y) tss += (v - m) * (v - m);
    if (!(tss > 0.0)) throw DegenerateError("adjusted_r2: response is constant");
    double rss = 0.0;
    for (double e : residuals) rss += e * e;
    const double Td = static_cast<double>(T);
    return 1.0 - (rss / (Td - static_cast<double>(k))) / (tss / (Td - 1.0));
}

DiagnosticsReport diagnose(const FitResult& fit, std::size_t ljung_box_lags) {
    DiagnosticsReport report;
    report.adj_r2 = adjusted_r2(fit.residuals, fit.response, fit.k());
    report.adj_r2_levels = adjusted_r2(fit.level_residuals, fit.level_response, fit.k());
    if (fit.rho_hat) {
        // Innovation residuals against the variation of y itself; rho counts as a parameter.
        const std::span<const double> y_tail(fit.level_response.data() + 1, fit.level_response.size() - 1);
        report.adj_r2_ar = adjusted_r2(fit.residuals, y_tail, fit.k() + 1);
    } else {
        report.adj_r2_ar = report.adj_r2;
    }
    report.durbin_watson = durbin_watson(fit.residuals);
    report.ljung_box_lags = ljung_box_lags;
    report.ljung_box_q = ljung_box(fit.residuals, ljung_box_lags);
    report.jarque_bera = jarque_bera(fit.residuals);
    return report;
}

}  // namespace spurious
