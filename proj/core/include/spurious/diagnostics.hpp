#pragma once

#include <cstddef>
#include <span>

#include "spurious/regress.hpp"

namespace spurious {

/// sum_{t>=2} (u_t - u_{t-1})^2 / sum_t u_t^2.
double durbin_watson(std::span<const double> residuals);

/// Ljung-Box portmanteau statistic T(T+2) sum_{j=1..lags} r_j^2 / (T - j),
/// with r_j the autocorrelations of the demeaned residuals.
double ljung_box(std::span<const double> residuals, std::size_t lags);

/// Jarque-Bera statistic (T/6)(S^2 + (K-3)^2/4) using moment (biased) skewness and kurtosis.
double jarque_bera(std::span<const double> sample);

/// 1 - (RSS/(T-k)) / (TSS/(T-1)).
double adjusted_r2(std::span<const double> residuals, std::span<const double> y, std::size_t k);

struct DiagnosticsReport {
    double adj_r2 = 0.0;
    /// Adjusted R^2 of the untransformed equation; differs from adj_r2 only for FGLS fits.
    double adj_r2_levels = 0.0;
    /// FGLS only: stage-2 residuals against the variation of y_2..y_T, with rho counted
    /// as an extra parameter (the convention of packages that fit an AR(1) error term).
    double adj_r2_ar = 0.0;
    double durbin_watson = 0.0;
    double ljung_box_q = 0.0;
    std::size_t ljung_box_lags = 10;
    double jarque_bera = 0.0;
};

/// Diagnostics of a fit. For FGLS fits every statistic is computed on the
/// quasi-differenced (final-stage) regression; adj_r2_levels uses y - X b on
/// the original data.
DiagnosticsReport diagnose(const FitResult& fit, std::size_t ljung_box_lags = 10);

}  // namespace spurious
