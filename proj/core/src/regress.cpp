#include "spurious/regress.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <boost/math/tools/minima.hpp>

#include "spurious/errors.hpp"

namespace spurious {

namespace {

constexpr double kRankTolerance = 1e-10;
// Brent stops within ~1e-8 of the clamp; closer than this counts as on it.
constexpr double kRhoEdgeSlack = 1e-6;

using Qr = Eigen::ColPivHouseholderQR<Eigen::MatrixXd>;

Eigen::Map<const Eigen::VectorXd> as_vector(std::span<const double> v) {
    return {v.data(), static_cast<Eigen::Index>(v.size())};
}

Series to_series(const Eigen::VectorXd& v) { return Series(v.data(), v.data() + v.size()); }

Qr factorize(const Eigen::MatrixXd& X) {
    const auto T = X.rows();
    const auto k = X.cols();
    if (k == 0) throw ParameterError("design matrix has no columns");
    if (!X.allFinite()) throw ParameterError("design matrix contains non-finite entries");
    Qr qr(X.rows(), X.cols());
    qr.setThreshold(kRankTolerance);
    qr.compute(X);
    if (qr.rank() < k) {
        throw SingularityError("design matrix is rank deficient (rank " + std::to_string(qr.rank()) + " < " +
                               std::to_string(k) + " columns)");
    }
    if (T <= k) {
        throw DegreesOfFreedomError("need more observations than coefficients (T=" + std::to_string(T) +
                                    ", k=" + std::to_string(k) + ")");
    }
    return qr;
}

// (X'X)^{-1} = P R^{-1} R^{-T} P' for X P = Q R.
Eigen::MatrixXd xtx_inverse(const Qr& qr) {
    const auto k = qr.cols();
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd inner = r_inv * r_inv.transpose();
    return qr.colsPermutation() * inner * qr.colsPermutation().transpose();
}

Eigen::VectorXd safe_ratio(const Eigen::VectorXd& num, const Eigen::VectorXd& den) {
    Eigen::VectorXd out(num.size());
    for (Eigen::Index i = 0; i < num.size(); ++i) out(i) = num(i) / den(i);
    return out;
}

void check_response(const DesignMatrix& X, std::span<const double> y) {
    if (X.rows() != y.size()) {
        throw ParameterError("response length " + std::to_string(y.size()) + " does not match design rows " +
                             std::to_string(X.rows()));
    }
    for (double v : y) {
        if (!std::isfinite(v)) throw ParameterError("response contains non-finite values");
    }
}

}  // namespace

std::string to_string(ColumnRole role) {
    switch (role) {
        case ColumnRole::Const: return "const";
        case ColumnRole::Trend: return "trend";
        case ColumnRole::BreakDummy: return "break";
        case ColumnRole::Regressor: return "x";
    }
    return "?";
}

std::string to_string(SeKind kind) {
    switch (kind) {
        case SeKind::Classical: return "classical";
        case SeKind::NeweyWest: return "newey-west";
        case SeKind::Fgls: return "fgls";
    }
    return "?";
}

std::string to_string(Estimator estimator) {
    switch (estimator) {
        case Estimator::Ols: return "OLS";
        case Estimator::NeweyWest: return "NW";
        case Estimator::Fgls: return "FGLS";
    }
    return "?";
}

std::string to_string(CriticalMode mode) { return mode == CriticalMode::Student ? "student" : "normal"; }

std::size_t DesignMatrix::regressor_index() const {
    const auto it = std::find(roles.begin(), roles.end(), ColumnRole::Regressor);
    if (it == roles.end() || std::count(roles.begin(), roles.end(), ColumnRole::Regressor) != 1) {
        throw ParameterError("design matrix must contain exactly one Regressor column");
    }
    return static_cast<std::size_t>(it - roles.begin());
}

std::size_t FitResult::regressor_index() const {
    const auto it = std::find(roles.begin(), roles.end(), ColumnRole::Regressor);
    if (it == roles.end()) throw ParameterError("fit has no Regressor column");
    return static_cast<std::size_t>(it - roles.begin());
}

void RegressionSpec::validate() const {
    if (number < 1 || number > 5) {
        throw ParameterError("regression number must be 1..5, got " + std::to_string(number));
    }
    if (!has_breaks() && !y_breaks.empty()) {
        throw ParameterError("break regressors are only part of regressions 4 and 5");
    }
}

DesignMatrix build_design(const RegressionSpec& spec, std::span<const double> x, std::size_t T) {
    spec.validate();
    if (x.size() != T) {
        throw ParameterError("regressor length " + std::to_string(x.size()) + " differs from T=" +
                             std::to_string(T));
    }
    std::vector<std::size_t> break_index;
    for (const auto& brk : spec.y_breaks) break_index.push_back(resolve_break(brk, T));

    DesignMatrix design;
    design.roles.push_back(ColumnRole::Const);
    if (spec.has_trend()) design.roles.push_back(ColumnRole::Trend);
    for (std::size_t i = 0; i < break_index.size(); ++i) design.roles.push_back(ColumnRole::BreakDummy);
    design.roles.push_back(ColumnRole::Regressor);

    const auto rows = static_cast<Eigen::Index>(T);
    design.values.resize(rows, static_cast<Eigen::Index>(design.roles.size()));
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto t = static_cast<std::size_t>(r) + 1;
        Eigen::Index c = 0;
        design.values(r, c++) = 1.0;
        if (spec.has_trend()) design.values(r, c++) = static_cast<double>(t);
        for (std::size_t i = 0; i < break_index.size(); ++i) {
            design.values(r, c++) = break_dummy(spec.y_breaks[i].kind, break_index[i], t);
        }
        design.values(r, c) = x[static_cast<std::size_t>(r)];
    }
    return design;
}

FitResult ols_fit(const DesignMatrix& X, std::span<const double> y) {
    check_response(X, y);
    const Qr qr = factorize(X.values);
    const auto yv = as_vector(y);

    FitResult fit;
    fit.roles = X.roles;
    fit.coefficients = qr.solve(yv);
    const Eigen::VectorXd resid = yv - X.values * fit.coefficients;
    const auto T = X.rows();
    const auto k = X.cols();
    fit.sigma2_hat = resid.squaredNorm() / static_cast<double>(T - k);
    fit.std_errors = (fit.sigma2_hat * xtx_inverse(qr).diagonal().array()).sqrt().matrix();
    fit.t_stats = safe_ratio(fit.coefficients, fit.std_errors);
    fit.residuals = to_series(resid);
    fit.response.assign(y.begin(), y.end());
    fit.level_residuals = fit.residuals;
    fit.level_response = fit.response;
    fit.effective_T = T;
    fit.se_kind = SeKind::Classical;
    return fit;
}

Eigen::VectorXd newey_west_se(const DesignMatrix& X, std::span<const double> residuals, std::size_t lag) {
    check_response(X, residuals);
    const auto T = static_cast<Eigen::Index>(X.rows());
    if (lag >= X.rows()) {
        throw ParameterError("Newey-West lag must be < T (lag=" + std::to_string(lag) + ")");
    }
    const Qr qr = factorize(X.values);
    const Eigen::MatrixXd bread = xtx_inverse(qr);

    // Scores g_t = x_t e_t, one per row.
    const Eigen::MatrixXd scores = X.values.array().colwise() * as_vector(residuals).array();
    Eigen::MatrixXd meat = scores.transpose() * scores;
    for (std::size_t j = 1; j <= lag; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const Eigen::MatrixXd gamma_j =
            scores.bottomRows(T - jj).transpose() * scores.topRows(T - jj);
        meat += bartlett_weight(j, lag) * (gamma_j + gamma_j.transpose());
    }
    const Eigen::MatrixXd cov = bread * meat * bread;
    return cov.diagonal().cwiseMax(0.0).cwiseSqrt();
}

std::size_t default_newey_west_lag(std::size_t T) noexcept {
    return static_cast<std::size_t>(std::floor(4.0 * std::pow(static_cast<double>(T) / 100.0, 2.0 / 9.0)));
}

FitResult ols_fit_newey_west(const DesignMatrix& X, std::span<const double> y, std::optional<std::size_t> lag) {
    FitResult fit = ols_fit(X, y);
    const std::size_t L = lag.value_or(default_newey_west_lag(X.rows()));
    fit.std_errors = newey_west_se(X, fit.residuals, L);
    fit.t_stats = safe_ratio(fit.coefficients, fit.std_errors);
    fit.se_kind = SeKind::NeweyWest;
    fit.nw_lag = L;
    return fit;
}

double estimate_rho(std::span<const double> residuals) {
    if (residuals.size() < 3) throw ParameterError("estimate_rho: need at least 3 residuals");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 1; t < residuals.size(); ++t) {
        num += residuals[t] * residuals[t - 1];
        den += residuals[t - 1] * residuals[t - 1];
    }
    if (!(den > 0.0)) throw DegenerateError("estimate_rho: lagged residuals are all zero");
    return std::clamp(num / den, -kRhoClamp, kRhoClamp);
}

QuasiDifferenced quasi_difference(const DesignMatrix& X, std::span<const double> y, double rho) {
    check_response(X, y);
    if (!(std::abs(rho) < 1.0)) throw ParameterError("quasi_difference: |rho| < 1 required");
    const auto T = static_cast<Eigen::Index>(X.rows());
    if (T < 2) throw ParameterError("quasi_difference: need at least 2 observations");
    QuasiDifferenced out;
    out.X.roles = X.roles;
    out.X.values = X.values.bottomRows(T - 1) - rho * X.values.topRows(T - 1);
    out.y.resize(static_cast<std::size_t>(T - 1));
    for (std::size_t t = 1; t < y.size(); ++t) out.y[t - 1] = y[t] - rho * y[t - 1];
    return out;
}

std::string to_string(FglsMethod method) {
    return method == FglsMethod::TwoStep ? "two-step" : "iterated";
}

std::optional<FglsMethod> parse_fgls_method(std::string_view text) {
    if (text == "two-step") return FglsMethod::TwoStep;
    if (text == "iterated") return FglsMethod::Iterated;
    return std::nullopt;
}

namespace {

// y - X b on the untransformed data.
Eigen::VectorXd level_residuals(const DesignMatrix& X, std::span<const double> y, const Eigen::VectorXd& b) {
    return as_vector(y) - X.values * b;
}

// t-ratio of rho in the no-intercept AR(1) regression of u, s^2 = RSS / (n - 2).
double residual_rho_t(std::span<const double> u, double rho) {
    double den = 0.0;
    double rss = 0.0;
    for (std::size_t t = 1; t < u.size(); ++t) {
        den += u[t - 1] * u[t - 1];
        const double e = u[t] - rho * u[t - 1];
        rss += e * e;
    }
    const double s2 = rss / static_cast<double>(u.size() - 2);
    return rho / std::sqrt(s2 / den);
}

FitResult finish_fgls(FitResult fit, const DesignMatrix& X, std::span<const double> y, double rho) {
    fit.rho_hat = rho;
    fit.se_kind = SeKind::Fgls;
    fit.level_residuals = to_series(level_residuals(X, y, fit.coefficients));
    fit.level_response.assign(y.begin(), y.end());
    return fit;
}

}  // namespace

FitResult fgls_fit(const DesignMatrix& X, std::span<const double> y, const FglsOptions& options) {
    check_response(X, y);
    if (options.forced_rho) {
        const QuasiDifferenced qd = quasi_difference(X, y, *options.forced_rho);
        return finish_fgls(ols_fit(qd.X, qd.y), X, y, *options.forced_rho);
    }

    const FitResult first = ols_fit(X, y);
    double rho = estimate_rho(first.residuals);
    if (options.method == FglsMethod::TwoStep) {
        const QuasiDifferenced qd = quasi_difference(X, y, rho);
        FitResult fit = finish_fgls(ols_fit(qd.X, qd.y), X, y, rho);
        fit.rho_t_stat = residual_rho_t(first.residuals, rho);
        fit.iterations = 1;
        return fit;
    }

    if (!(options.tolerance > 0.0)) throw ParameterError("fgls_fit: tolerance must be positive");
    // Gauss-Newton on (b, rho) for e_t = (y_t - X_t b) - rho (y_{t-1} - X_{t-1} b), t = 2..T,
    // started at the two-step estimate. Its fixed points are those of iterated
    // Cochrane-Orcutt, but it does not crawl when rho approaches the clamp.
    const auto T = static_cast<Eigen::Index>(X.rows());
    const auto k = static_cast<Eigen::Index>(X.cols());
    const auto yv = as_vector(y);
    auto ssr_at = [&](const Eigen::VectorXd& b, double r) {
        const Eigen::VectorXd u = yv - X.values * b;
        return (u.tail(T - 1) - r * u.head(T - 1)).squaredNorm();
    };
    if (T - 1 <= k + 1) throw DegreesOfFreedomError("fgls_fit: too few observations to estimate rho as well");
    const QuasiDifferenced start = quasi_difference(X, y, rho);
    Eigen::VectorXd b = ols_fit(start.X, start.y).coefficients;
    double ssr = ssr_at(b, rho);
    std::size_t iteration = 0;
    bool converged = false;
    while (iteration < options.max_iterations) {
        ++iteration;
        const Eigen::VectorXd u = yv - X.values * b;
        const Eigen::VectorXd e = u.tail(T - 1) - rho * u.head(T - 1);
        Eigen::MatrixXd J(T - 1, k + 1);
        J.leftCols(k) = X.values.bottomRows(T - 1) - rho * X.values.topRows(T - 1);
        J.col(k) = u.head(T - 1);
        // Rank-tolerant solve: near the clamp the intercept and u_{t-1} can be collinear.
        Qr jqr(J.rows(), J.cols());
        jqr.setThreshold(kRankTolerance);
        jqr.compute(J);
        const Eigen::VectorXd step = jqr.solve(e);

        double scale = 1.0;
        bool improved = false;
        Eigen::VectorXd b_next;
        double rho_next = rho;
        double ssr_next = ssr;
        for (int halving = 0; halving < 40; ++halving, scale *= 0.5) {
            b_next = b + scale * step.head(k);
            rho_next = std::clamp(rho + scale * step(k), -kRhoClamp, kRhoClamp);
            ssr_next = ssr_at(b_next, rho_next);
            // Near the minimum the sum of squares is flat to rounding; demanding a
            // strict decrease there would stall rho at about sqrt(eps).
            if (ssr_next <= ssr * (1.0 + 64.0 * std::numeric_limits<double>::epsilon())) {
                improved = true;
                break;
            }
        }
        if (!improved) {  // no descent direction left: numerically at the minimum
            converged = true;
            break;
        }
        const double d_rho = std::abs(rho_next - rho);
        b = b_next;
        rho = rho_next;
        ssr = ssr_next;
        // b is re-solved exactly at the final rho below, so only rho has to settle.
        if (d_rho <= options.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        // Slow progress means the sum of squares keeps falling towards the clamp
        // (typically a near-unit root, where the intercept is poorly identified).
        // Minimise the concentrated sum of squares over rho between the current
        // iterate and the clamp it is heading for.
        auto profile = [&](double r) {
            const QuasiDifferenced q = quasi_difference(X, y, r);
            Qr pqr(q.X.values.rows(), q.X.values.cols());
            pqr.setThreshold(kRankTolerance);
            pqr.compute(q.X.values);
            const Eigen::VectorXd qy = as_vector(q.y);
            return (qy - q.X.values * pqr.solve(qy)).squaredNorm();
        };
        const double edge = rho >= 0.0 ? kRhoClamp : -kRhoClamp;
        const auto [lo, hi] = std::minmax(rho, edge);
        auto [r_min, s_min] = boost::math::tools::brent_find_minima(profile, lo, hi, 40);
        if (profile(edge) < s_min) r_min = edge;
        if (profile(r_min) <= ssr) rho = r_min;
    }

    // Final pass at the converged rho, then the Gauss-Newton covariance with rho as a parameter.
    const QuasiDifferenced qd = quasi_difference(X, y, rho);
    FitResult fit = finish_fgls(ols_fit(qd.X, qd.y), X, y, rho);
    fit.iterations = iteration;
    fit.nuisance_params = 1;

    const Eigen::Index n = T - 1;
    fit.sigma2_hat = as_vector(fit.residuals).squaredNorm() / static_cast<double>(n - k - 1);
    Eigen::MatrixXd J(n, k + 1);
    J.leftCols(k) = qd.X.values;
    J.col(k) = as_vector(fit.level_residuals).head(n);
    Qr jqr(J.rows(), J.cols());
    jqr.setThreshold(kRankTolerance);
    jqr.compute(J);
    if (std::abs(rho) >= kRhoClamp - kRhoEdgeSlack || jqr.rank() < J.cols()) {
        // rho sits on the clamp, or cannot be told apart from the intercept: treat
        // it as fixed for the covariance of b (rho has no t-ratio), keeping the df convention.
        fit.std_errors = (fit.sigma2_hat * xtx_inverse(factorize(qd.X.values)).diagonal()).cwiseSqrt();
        fit.t_stats = safe_ratio(fit.coefficients, fit.std_errors);
        fit.rho_t_stat.reset();
        return fit;
    }
    const Eigen::VectorXd var = fit.sigma2_hat * xtx_inverse(factorize(J)).diagonal();
    fit.std_errors = var.head(k).cwiseSqrt();
    fit.t_stats = safe_ratio(fit.coefficients, fit.std_errors);
    fit.rho_t_stat = rho / std::sqrt(var(k));
    return fit;
}

FitResult fgls_fit(const RegressionSpec& spec, std::span<const double> x, std::span<const double> y,
                   const FglsOptions& options) {
    if (!spec.uses_fgls()) {
        throw ParameterError("fgls_fit: regression " + std::to_string(spec.number) + " is not an FGLS specification");
    }
    return fgls_fit(build_design(spec, x, y.size()), y, options);
}

Estimator default_estimator(const RegressionSpec& spec) noexcept {
    return spec.uses_fgls() ? Estimator::Fgls : Estimator::Ols;
}

FitResult fit_regression(const RegressionSpec& spec, std::span<const double> x, std::span<const double> y,
                         const FitOptions& options) {
    const DesignMatrix X = build_design(spec, x, y.size());
    switch (options.estimator) {
        case Estimator::Ols: return ols_fit(X, y);
        case Estimator::NeweyWest: return ols_fit_newey_west(X, y, options.nw_lag);
        case Estimator::Fgls: {
            FglsOptions fgls;
            fgls.method = options.fgls_method;
            return fgls_fit(X, y, fgls);
        }
    }
    throw ParameterError("unknown estimator");
}

std::size_t residual_df(const RegressionSpec& spec, const FitOptions& options, std::size_t T) {
    spec.validate();
    const std::size_t k = 2 + (spec.has_trend() ? 1 : 0) + spec.y_breaks.size();
    std::size_t lost = k;
    std::size_t n = T;
    if (options.estimator == Estimator::Fgls) {
        n = T - 1;
        if (options.fgls_method == FglsMethod::Iterated) ++lost;
    }
    if (T < 1 || n <= lost) throw DegreesOfFreedomError("residual_df: T too small for the regression");
    return n - lost;
}

double critical_value(CriticalMode mode, std::size_t df, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("alpha must lie in (0, 1)");
    if (mode == CriticalMode::Normal) {
        const boost::math::normal dist;
        return boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
    }
    if (df == 0) throw DegreesOfFreedomError("Student critical value needs df >= 1");
    const boost::math::students_t dist(static_cast<double>(df));
    return boost::math::quantile(boost::math::complement(dist, alpha / 2.0));
}

}  // namespace spurious
