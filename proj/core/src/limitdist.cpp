#include "spurious/limitdist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spurious/errors.hpp"
#include "spurious/parallel.hpp"

namespace spurious {

WienerPath WienerPath::from_values(std::vector<double> values) {
    if (values.size() < kMinSteps + 1) {
        throw ParameterError("WienerPath: need at least " + std::to_string(kMinSteps) + " steps");
    }
    if (values.front() != 0.0) throw ParameterError("WienerPath: values[0] must be 0");
    return WienerPath(std::move(values));
}

WienerPath WienerPath::simulate(RngStream& rng, std::size_t n_steps) {
    if (n_steps < kMinSteps) {
        throw ParameterError("WienerPath: n_steps must be >= " + std::to_string(kMinSteps));
    }
    const double scale = std::sqrt(1.0 / static_cast<double>(n_steps));
    std::vector<double> values(n_steps + 1);
    values[0] = 0.0;
    for (std::size_t i = 1; i <= n_steps; ++i) values[i] = values[i - 1] + scale * rng.standard_normal();
    return WienerPath(std::move(values));
}

WienerPath WienerPath::scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& v : out) v *= factor;
    return WienerPath(std::move(out));
}

PathFunctionals path_functionals(const WienerPath& path) {
    const auto v = path.values();
    const std::size_t n = path.n_steps();
    const double dt = 1.0 / static_cast<double>(n);
    PathFunctionals f;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        f.int_w += v[i];
        f.int_tw += t * v[i];
        f.int_w2 += v[i] * v[i];
    }
    f.int_w *= dt;
    f.int_tw *= dt;
    f.int_w2 *= dt;
    f.w1 = v[n];
    return f;
}

double ito_cross(const WienerPath& w, const WienerPath& v) {
    if (w.n_steps() != v.n_steps()) throw ParameterError("ito_cross: paths are on different grids");
    const auto wv = w.values();
    const auto vv = v.values();
    double sum = 0.0;
    for (std::size_t i = 0; i < w.n_steps(); ++i) sum += wv[i] * (vv[i + 1] - vv[i]);
    return sum;
}

namespace {

// A = int W dV - V(1) int W,  B = V(1)/2 - int V,  C = int tW - 1/2 int W,  D = int W^2 - (int W)^2.
struct Pieces {
    double a, b, c, d;
};

Pieces pieces(const WienerPath& w, const WienerPath& v) {
    const PathFunctionals fw = path_functionals(w);
    const PathFunctionals fv = path_functionals(v);
    const double cross = ito_cross(w, v);
    return {cross - fv.w1 * fw.int_w, 0.5 * fv.w1 - fv.int_w, fw.int_tw - 0.5 * fw.int_w,
            fw.int_w2 - fw.int_w * fw.int_w};
}

}  // namespace

LimitTerms limit_terms(const WienerPath& w, const WienerPath& v) {
    const Pieces p = pieces(w, v);
    return {p.a / 12.0 - p.b * p.c, p.d / 144.0 - p.c * p.c / 12.0};
}

double limit_t_value(const WienerPath& w, const WienerPath& v) {
    const LimitTerms terms = limit_terms(w, v);
    if (!(terms.denominator_sq > 0.0) || std::sqrt(terms.denominator_sq) < kMinLimitDenominator) {
        throw DegenerateError("limit functional: denominator below tolerance");
    }
    return terms.numerator / std::sqrt(terms.denominator_sq);
}

double coefficient_limit_ols(const WienerPath& w, const WienerPath& v, double sigma_v, double sigma_w) {
    const Pieces p = pieces(w, v);
    return (sigma_v * p.a / 12.0 - sigma_v * p.b * p.c) / (sigma_w * p.d / 12.0 - sigma_w * p.c * p.c);
}

double coefficient_limit_fgls(const WienerPath& w, const WienerPath& v, double sigma_y, double sigma_w,
                              double phi_y) {
    const Pieces p = pieces(w, v);
    return sigma_y * (p.a / 12.0 - p.b * p.c) / ((1.0 - phi_y) * sigma_w * (p.d / 12.0 - p.c * p.c));
}

LimitDraw limit_t_draw(RngStream& rng, std::size_t n_steps) {
    LimitDraw draw;
    // A run of degenerate pairs this long is a numerical failure, not bad luck.
    constexpr std::size_t kMaxAttempts = 1000;
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
        const WienerPath w = WienerPath::simulate(rng, n_steps);
        const WienerPath v = WienerPath::simulate(rng, n_steps);
        const LimitTerms terms = limit_terms(w, v);
        if (terms.denominator_sq > 0.0 && std::sqrt(terms.denominator_sq) >= kMinLimitDenominator) {
            draw.t_value = terms.numerator / std::sqrt(terms.denominator_sq);
            return draw;
        }
        ++draw.resamples;
    }
    throw NumericalQualityError("limit_t_draw: no non-degenerate path pair found");
}

LimitSample simulate_limit(std::size_t R, std::size_t n_steps, std::uint64_t seed, unsigned threads) {
    if (R == 0) throw ParameterError("simulate_limit: R must be positive");
    if (n_steps < WienerPath::kMinSteps) throw ParameterError("simulate_limit: n_steps must be >= 100");
    LimitSample sample;
    sample.draws.resize(R);
    std::vector<std::size_t> resamples(R, 0);
    parallel_for(R, threads, [&](std::size_t i) {
        RngStream rng(seed, i);
        const LimitDraw d = limit_t_draw(rng, n_steps);
        sample.draws[i] = d.t_value;
        resamples[i] = d.resamples;
    });
    for (std::size_t r : resamples) sample.resamples += r;
    if (static_cast<double>(sample.resamples) > 1e-4 * static_cast<double>(R)) {
        throw NumericalQualityError("simulate_limit: " + std::to_string(sample.resamples) +
                                    " degenerate draws exceed 0.01% of R");
    }
    return sample;
}

double empirical_quantile(std::span<const double> sorted, double prob) {
    if (sorted.empty()) throw ParameterError("empirical_quantile: empty sample");
    if (!(prob >= 0.0 && prob <= 1.0)) throw ParameterError("empirical_quantile: prob must lie in [0, 1]");
    const double h = prob * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> sample_quantiles(std::span<const double> draws, std::span<const double> probs) {
    std::vector<double> sorted(draws.begin(), draws.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> out;
    out.reserve(probs.size());
    for (double p : probs) out.push_back(empirical_quantile(sorted, p));
    return out;
}

std::vector<double> limit_quantiles(std::size_t R, std::size_t n_steps, std::span<const double> probs,
                                    std::uint64_t seed, unsigned threads) {
    if (R < 1000) throw ParameterError("limit_quantiles: R must be >= 1000");
    const LimitSample sample = simulate_limit(R, n_steps, seed, threads);
    return sample_quantiles(sample.draws, probs);
}

}  // namespace spurious
