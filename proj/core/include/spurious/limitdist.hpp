#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "spurious/rng.hpp"

namespace spurious {

/// Standard Brownian motion sampled on the grid i / n_steps, i = 0..n_steps.
class WienerPath {
public:
    static constexpr std::size_t kMinSteps = 100;

    /// Wraps explicit grid values (values[0] must be 0, at least kMinSteps steps).
    static WienerPath from_values(std::vector<double> values);
    /// Simulates a path with i.i.d. N(0, 1/n_steps) increments.
    static WienerPath simulate(RngStream& rng, std::size_t n_steps);

    std::size_t n_steps() const noexcept { return values_.size() - 1; }
    std::span<const double> values() const noexcept { return values_; }

    /// Path multiplied by a constant (used for invariance checks).
    WienerPath scaled(double factor) const;

private:
    explicit WienerPath(std::vector<double> values) : values_(std::move(values)) {}
    std::vector<double> values_;
};

/// Left-endpoint Riemann sums of a path.
struct PathFunctionals {
    double int_w = 0.0;   ///< int_0^1 W(t) dt
    double int_tw = 0.0;  ///< int_0^1 t W(t) dt
    double int_w2 = 0.0;  ///< int_0^1 W(t)^2 dt
    double w1 = 0.0;      ///< W(1)
};

PathFunctionals path_functionals(const WienerPath& path);

/// Ito sum  sum_i W(t_i) (V(t_{i+1}) - V(t_i)). Grids must match.
double ito_cross(const WienerPath& w, const WienerPath& v);

/// Numerator and squared denominator of the limiting t-statistic of gamma
/// when the trend regression is run on a TS dependent variable and an I(1)
/// regressor (OLS without, FGLS with autocorrelated errors; same limit):
///
///   num  = 1/12 [int W dV - V(1) int W] - [V(1)/2 - int V] [int tW - 1/2 int W]
///   den2 = 1/144 {int W^2 - (int W)^2} - 1/12 {int tW - 1/2 int W}^2
struct LimitTerms {
    double numerator = 0.0;
    double denominator_sq = 0.0;
};

LimitTerms limit_terms(const WienerPath& w, const WienerPath& v);

/// Draws whose denominator falls below this value are resampled.
inline constexpr double kMinLimitDenominator = 1e-12;

/// num / sqrt(den2); throws DegenerateError when the denominator is below kMinLimitDenominator.
double limit_t_value(const WienerPath& w, const WienerPath& v);

/// Limit of T * gamma_hat for the OLS trend regression, with the scale
/// factors placed as in the reference formula:
///   [1/12 s_v A - s_v B C] / [1/12 s_w D - s_w C^2].
double coefficient_limit_ols(const WienerPath& w, const WienerPath& v, double sigma_v, double sigma_w);

/// Limit of T * gamma_hat for the FGLS trend regression:
///   s_y {1/12 A - B C} / ((1 - phi_y) s_w {1/12 D - C^2}).
double coefficient_limit_fgls(const WienerPath& w, const WienerPath& v, double sigma_y, double sigma_w,
                              double phi_y);

struct LimitDraw {
    double t_value = 0.0;
    std::size_t resamples = 0;  ///< degenerate path pairs discarded before this draw
};

/// One draw: W is simulated first, then V, both from `rng`.
LimitDraw limit_t_draw(RngStream& rng, std::size_t n_steps);

struct LimitSample {
    std::vector<double> draws;  ///< in replication order
    std::size_t resamples = 0;
};

/// R independent draws; draw i uses RngStream(seed, i). Throws
/// NumericalQualityError when more than 0.01% of R needed resampling.
LimitSample simulate_limit(std::size_t R, std::size_t n_steps, std::uint64_t seed, unsigned threads = 1);

/// Linear-interpolation (type 7) quantile of an ascending-sorted sample.
double empirical_quantile(std::span<const double> sorted, double prob);

/// Empirical quantiles of R limit draws at `probs`. Requires R >= 1000.
std::vector<double> limit_quantiles(std::size_t R, std::size_t n_steps, std::span<const double> probs,
                                    std::uint64_t seed, unsigned threads = 1);

/// Quantiles of an already simulated sample (sorts a copy).
std::vector<double> sample_quantiles(std::span<const double> draws, std::span<const double> probs);

}  // namespace spurious
