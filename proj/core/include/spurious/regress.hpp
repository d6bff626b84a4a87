#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spurious/dgp.hpp"

namespace spurious {

enum class ColumnRole { Const, Trend, BreakDummy, Regressor };

std::string to_string(ColumnRole role);

/// Regressors in the order Const, Trend?, BreakDummy..., Regressor.
struct DesignMatrix {
    Eigen::MatrixXd values;
    std::vector<ColumnRole> roles;

    std::size_t rows() const noexcept { return static_cast<std::size_t>(values.rows()); }
    std::size_t cols() const noexcept { return static_cast<std::size_t>(values.cols()); }
    /// Column index of the single Regressor column (x, whose coefficient is gamma).
    std::size_t regressor_index() const;
};

/// One of the five specifications:
///   1: y = a + g x                 (OLS)
///   2: y = a + b t + g x           (OLS)
///   3: as 2, AR(1) errors          (FGLS)
///   4: y = a + b t + b1 DT + g x   (OLS)
///   5: as 4, AR(1) errors          (FGLS)
struct RegressionSpec {
    int number = 1;
    /// Break dates used to build the DT (slope) or DU (level) columns of specs 4 and 5.
    std::vector<BreakSpec> y_breaks;

    void validate() const;
    bool uses_fgls() const noexcept { return number == 3 || number == 5; }
    bool has_trend() const noexcept { return number >= 2; }
    bool has_breaks() const noexcept { return number >= 4; }
};

enum class SeKind { Classical, NeweyWest, Fgls };

std::string to_string(SeKind kind);

struct FitResult {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd std_errors;
    Eigen::VectorXd t_stats;
    std::vector<ColumnRole> roles;
    /// Residuals of the final-stage regression (quasi-differenced for FGLS).
    Series residuals;
    /// Dependent variable of the final-stage regression.
    Series response;
    /// y - X b on the untransformed data (equals `residuals` for OLS).
    Series level_residuals;
    /// Untransformed dependent variable.
    Series level_response;
    std::optional<double> rho_hat;
    std::optional<double> rho_t_stat;
    double sigma2_hat = 0.0;
    std::size_t effective_T = 0;
    SeKind se_kind = SeKind::Classical;
    std::size_t nw_lag = 0;
    /// Estimated parameters outside `coefficients` (1 for rho in converged FGLS).
    std::size_t nuisance_params = 0;
    /// Cochrane-Orcutt iterations performed (FGLS only).
    std::size_t iterations = 0;

    std::size_t k() const noexcept { return static_cast<std::size_t>(coefficients.size()); }
    std::size_t df() const noexcept { return effective_T - k() - nuisance_params; }
    std::size_t regressor_index() const;
    double gamma() const { return coefficients(static_cast<Eigen::Index>(regressor_index())); }
    double gamma_t() const { return t_stats(static_cast<Eigen::Index>(regressor_index())); }
};

/// Assemble the regressors of `spec` for sample size T.
DesignMatrix build_design(const RegressionSpec& spec, std::span<const double> x, std::size_t T);

/// Ordinary least squares via column-pivoted Householder QR with classical
/// standard errors sigma^2 (X'X)^{-1}, sigma^2 = RSS / (T - k).
/// Rank tolerance: |R_ii| <= 1e-10 * largest column norm counts as zero.
FitResult ols_fit(const DesignMatrix& X, std::span<const double> y);

/// Bartlett weight for lag j under truncation `lag`.
inline double bartlett_weight(std::size_t j, std::size_t lag) noexcept {
    return 1.0 - static_cast<double>(j) / static_cast<double>(lag + 1);
}

/// Newey-West HAC standard errors (no small-sample scaling).
Eigen::VectorXd newey_west_se(const DesignMatrix& X, std::span<const double> residuals, std::size_t lag);

/// floor(4 (T/100)^{2/9}).
std::size_t default_newey_west_lag(std::size_t T) noexcept;

/// OLS coefficients with Newey-West standard errors.
FitResult ols_fit_newey_west(const DesignMatrix& X, std::span<const double> y,
                             std::optional<std::size_t> lag = std::nullopt);

inline constexpr double kRhoClamp = 0.999;

/// No-intercept AR(1) slope of the residuals, clamped to [-0.999, 0.999].
double estimate_rho(std::span<const double> residuals);

struct QuasiDifferenced {
    DesignMatrix X;
    Series y;
};

/// Cochrane-Orcutt transform z_t - rho z_{t-1}, t = 2..T (first row dropped).
QuasiDifferenced quasi_difference(const DesignMatrix& X, std::span<const double> y, double rho);

enum class FglsMethod {
    /// OLS, rho from its residuals, one OLS pass on the quasi-differenced data.
    /// Standard errors are the classical ones of that last pass.
    TwoStep,
    /// Cochrane-Orcutt iterated until rho settles. This is the nonlinear least
    /// squares fit of y_t = X_t b + u_t, u_t = rho u_{t-1} + e_t (t = 2..T), and
    /// standard errors come from its Jacobian [X_t - rho X_{t-1}, u_{t-1}] with
    /// s^2 = SSR / (T - 1 - k - 1), so rho counts as an estimated parameter.
    Iterated,
};

std::string to_string(FglsMethod method);
std::optional<FglsMethod> parse_fgls_method(std::string_view text);

struct FglsOptions {
    FglsMethod method = FglsMethod::Iterated;
    /// Skip estimation and quasi-difference with this value (classical stage-2 errors).
    std::optional<double> forced_rho;
    /// Convergence threshold on |rho_{i+1} - rho_i| for the iterated method.
    double tolerance = 1e-10;
    /// Gauss-Newton steps before switching to a bracketed search of the
    /// concentrated sum of squares between the last iterate and the clamp.
    std::size_t max_iterations = 100;
};

/// Feasible GLS under AR(1) errors, first observation dropped.
FitResult fgls_fit(const DesignMatrix& X, std::span<const double> y, const FglsOptions& options = {});

FitResult fgls_fit(const RegressionSpec& spec, std::span<const double> x, std::span<const double> y,
                   const FglsOptions& options = {});

enum class Estimator { Ols, NeweyWest, Fgls };

std::string to_string(Estimator estimator);

/// Estimator implied by the specification number (FGLS for 3 and 5, OLS otherwise).
Estimator default_estimator(const RegressionSpec& spec) noexcept;

struct FitOptions {
    Estimator estimator = Estimator::Ols;
    std::optional<std::size_t> nw_lag;
    FglsMethod fgls_method = FglsMethod::Iterated;
};

/// Residual degrees of freedom of `spec` fitted by `options` on T observations,
/// known before any data are seen (what FitResult::df() will report).
std::size_t residual_df(const RegressionSpec& spec, const FitOptions& options, std::size_t T);

/// Build the design for `spec` and fit it with the requested estimator.
FitResult fit_regression(const RegressionSpec& spec, std::span<const double> x, std::span<const double> y,
                         const FitOptions& options);

enum class CriticalMode { Student, Normal };

std::string to_string(CriticalMode mode);

/// Two-sided critical value at level alpha: Student t with df degrees of
/// freedom, or the standard normal quantile.
double critical_value(CriticalMode mode, std::size_t df, double alpha);

}  // namespace spurious
