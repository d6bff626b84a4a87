#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "spurious/dgp.hpp"
#include "spurious/errors.hpp"
#include "spurious/regress.hpp"

namespace spurious {
namespace {

RegressionSpec spec(int n, std::vector<BreakSpec> breaks = {}) {
    RegressionSpec s;
    s.number = n;
    s.y_breaks = std::move(breaks);
    return s;
}

TEST(BuildDesign, Regression2Columns) {
    const Series x = {5, 6, 7};
    const DesignMatrix X = build_design(spec(2), x, 3);
    ASSERT_EQ(X.cols(), 3u);
    EXPECT_EQ(X.roles, (std::vector<ColumnRole>{ColumnRole::Const, ColumnRole::Trend, ColumnRole::Regressor}));
    for (Eigen::Index r = 0; r < 3; ++r) {
        EXPECT_EQ(X.values(r, 0), 1.0);
        EXPECT_EQ(X.values(r, 1), static_cast<double>(r + 1));
        EXPECT_EQ(X.values(r, 2), x[static_cast<std::size_t>(r)]);
    }
    EXPECT_EQ(X.regressor_index(), 2u);
}

TEST(BuildDesign, SlopeBreakColumn) {
    const DesignMatrix X = build_design(spec(4, {BreakSpec::slope_at(std::size_t{2}, 1.0)}), Series{1, 2, 4, 3}, 4);
    ASSERT_EQ(X.cols(), 4u);
    EXPECT_EQ(X.roles[2], ColumnRole::BreakDummy);
    EXPECT_EQ(X.values.col(2), Eigen::Vector4d(0, 0, 1, 2));
}

TEST(BuildDesign, LevelBreakColumn) {
    const DesignMatrix X = build_design(spec(5, {BreakSpec::level_at(std::size_t{2}, 1.0)}), Series{1, 2, 4, 3}, 4);
    EXPECT_EQ(X.values.col(2), Eigen::Vector4d(0, 0, 1, 1));
}

TEST(BuildDesign, RejectsMismatchedInputs) {
    EXPECT_THROW(build_design(spec(2), Series{1, 2}, 3), ParameterError);
    EXPECT_THROW(build_design(spec(6), Series{1, 2, 3}, 3), ParameterError);
    EXPECT_THROW(build_design(spec(2, {BreakSpec::slope_at(0.5, 1.0)}), Series{1, 2, 3, 4}, 4), ParameterError);
}

TEST(OlsFit, ConstantXIsRankDeficient) {
    const DesignMatrix X = build_design(spec(1), Series{1, 1}, 2);
    EXPECT_THROW(ols_fit(X, Series{1, 2}), SingularityError);
    const DesignMatrix X3 = build_design(spec(1), Series{2, 2, 2}, 3);
    try {
        ols_fit(X3, Series{1, 2, 4});
        FAIL() << "expected SingularityError";
    } catch (const SingularityError& e) {
        EXPECT_NE(std::string(e.what()).find("rank deficient"), std::string::npos);
    }
}

TEST(OlsFit, NeedsMoreRowsThanColumns) {
    const DesignMatrix X = build_design(spec(2), Series{1, 3, 2}, 3);
    EXPECT_THROW(ols_fit(X, Series{1, 2, 3}), DegreesOfFreedomError);
}

TEST(OlsFit, RejectsBadResponse) {
    const DesignMatrix X = build_design(spec(1), Series{1, 3, 2}, 3);
    EXPECT_THROW(ols_fit(X, Series{1, 2}), ParameterError);
    EXPECT_THROW(ols_fit(X, Series{1, NAN, 2}), ParameterError);
}

TEST(OlsFit, ExactFitHasZeroResiduals) {
    const Series x = {1, 4, 2, 8, 5};
    Series y(5);
    for (std::size_t t = 0; t < 5; ++t) y[t] = 3.0 - 0.5 * static_cast<double>(t + 1) + 2.0 * x[t];
    const FitResult fit = ols_fit(build_design(spec(2), x, 5), y);
    EXPECT_NEAR(fit.coefficients(0), 3.0, 1e-12);
    EXPECT_NEAR(fit.coefficients(1), -0.5, 1e-12);
    EXPECT_NEAR(fit.gamma(), 2.0, 1e-12);
    for (double e : fit.residuals) EXPECT_NEAR(e, 0.0, 1e-12);
}

TEST(OlsFit, InterceptOnlyIsTheMean) {
    DesignMatrix X;
    X.values = Eigen::MatrixXd::Ones(4, 1);
    X.roles = {ColumnRole::Const};
    const FitResult fit = ols_fit(X, Series{1, 2, 3, 6});
    EXPECT_DOUBLE_EQ(fit.coefficients(0), 3.0);
    const Series expected = {-2, -1, 0, 3};
    for (std::size_t t = 0; t < 4; ++t) EXPECT_NEAR(fit.residuals[t], expected[t], 1e-14);
    EXPECT_THROW(fit.regressor_index(), ParameterError);
}

TEST(OlsFit, FourPointProblemAgainstNormalEquations) {
    const Series x = {1, 2, 3, 4};
    const Series y = {2, 4, 5, 9};
    // Closed-form simple regression from centred sums.
    const double n = 4.0;
    const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t t = 0; t < 4; ++t) {
        sxx += (x[t] - xbar) * (x[t] - xbar);
        sxy += (x[t] - xbar) * (y[t] - ybar);
    }
    const double gamma = sxy / sxx;
    const double alpha = ybar - gamma * xbar;
    double rss = 0.0;
    for (std::size_t t = 0; t < 4; ++t) rss += std::pow(y[t] - alpha - gamma * x[t], 2);
    const double se_gamma = std::sqrt(rss / (n - 2.0) / sxx);
    const double se_alpha = std::sqrt(rss / (n - 2.0) * (1.0 / n + xbar * xbar / sxx));

    const FitResult fit = ols_fit(build_design(spec(1), x, 4), y);
    EXPECT_NEAR(fit.gamma(), gamma, 1e-10);
    EXPECT_NEAR(fit.coefficients(0), alpha, 1e-10);
    EXPECT_NEAR(fit.gamma_t(), gamma / se_gamma, 1e-10);
    EXPECT_NEAR(fit.t_stats(0), alpha / se_alpha, 1e-10);
    EXPECT_NEAR(fit.sigma2_hat, rss / 2.0, 1e-12);
    EXPECT_EQ(fit.df(), 2u);
    // Hand values of the same problem.
    EXPECT_NEAR(gamma, 2.2, 1e-12);
    EXPECT_NEAR(alpha, -0.5, 1e-12);
    EXPECT_NEAR(rss, 1.8, 1e-12);
}

TEST(NeweyWest, LagZeroConstantOnlyIsTheWhiteMeanError) {
    DesignMatrix X;
    X.values = Eigen::MatrixXd::Ones(5, 1);
    X.roles = {ColumnRole::Const};
    const Series e = {0.5, -1.0, 2.0, -0.25, -1.25};
    double s = 0.0;
    for (double v : e) s += v * v;
    EXPECT_NEAR(newey_west_se(X, e, 0)(0), std::sqrt(s) / 5.0, 1e-14);
}

TEST(NeweyWest, ZeroResidualsGiveZeroErrors) {
    const DesignMatrix X = build_design(spec(2), Series{1, 5, 2, 7, 3}, 5);
    const Eigen::VectorXd se = newey_west_se(X, Series(5, 0.0), 0);
    EXPECT_EQ(se, Eigen::VectorXd::Zero(3));
}

TEST(NeweyWest, WhiteNoiseMatchesClassicalInLargeSamples) {
    RngStream rng(4, 0);
    const std::size_t T = 5000;
    const Series x = generate(DgpSpec::trend_stationary(0, 0, 0.5), T, rng);
    const Series y = generate(DgpSpec::trend_stationary(1, 0, 0), T, rng);
    const DesignMatrix X = build_design(spec(1), x, T);
    const FitResult ols = ols_fit(X, y);
    const FitResult nw = ols_fit_newey_west(X, y);
    EXPECT_EQ(nw.se_kind, SeKind::NeweyWest);
    EXPECT_EQ(nw.nw_lag, default_newey_west_lag(T));
    EXPECT_NEAR(nw.std_errors(1) / ols.std_errors(1), 1.0, 0.1);
    EXPECT_EQ(nw.coefficients, ols.coefficients);
}

TEST(NeweyWest, BartlettWeightsAndDefaultLag) {
    EXPECT_DOUBLE_EQ(bartlett_weight(1, 4), 0.8);
    EXPECT_DOUBLE_EQ(bartlett_weight(4, 4), 0.2);
    EXPECT_EQ(default_newey_west_lag(100), 4u);
    EXPECT_EQ(default_newey_west_lag(50), 3u);
    const DesignMatrix X = build_design(spec(1), Series{1, 3, 2}, 3);
    EXPECT_THROW(newey_west_se(X, Series{1, 2, 3}, 3), ParameterError);
}

TEST(CriticalValue, StudentAndNormal) {
    EXPECT_NEAR(critical_value(CriticalMode::Normal, 0, 0.05), 1.959963984540054, 1e-12);
    EXPECT_NEAR(critical_value(CriticalMode::Student, 98, 0.05), 1.984467454426692, 1e-9);
    EXPECT_NEAR(critical_value(CriticalMode::Student, 1, 0.05), 12.70620473617471, 1e-9);
    EXPECT_THROW(critical_value(CriticalMode::Student, 0, 0.05), DegreesOfFreedomError);
    EXPECT_THROW(critical_value(CriticalMode::Normal, 10, 1.5), ParameterError);
}

TEST(ResidualDf, MatchesTheFittedModel) {
    RngStream rng(6, 0);
    const std::size_t T = 40;
    const Series x = generate(DgpSpec::integrated(0.2), T, rng);
    const Series y = generate(DgpSpec::trend_stationary(0.8, 0.2, 0.5), T, rng);
    const std::vector<BreakSpec> brk = {BreakSpec::slope_at(0.5, 1.0)};
    for (int n = 1; n <= 5; ++n) {
        const RegressionSpec s = spec(n, n >= 4 ? brk : std::vector<BreakSpec>{});
        for (FglsMethod m : {FglsMethod::TwoStep, FglsMethod::Iterated}) {
            const FitOptions options{default_estimator(s), std::nullopt, m};
            EXPECT_EQ(residual_df(s, options, T), fit_regression(s, x, y, options).df()) << "spec " << n;
        }
    }
    EXPECT_EQ(residual_df(spec(2), FitOptions{}, 100), 97u);
    EXPECT_EQ(residual_df(spec(3), FitOptions{.estimator = Estimator::Fgls}, 100), 95u);
    EXPECT_THROW(residual_df(spec(2), FitOptions{}, 3), DegreesOfFreedomError);
}

}  // namespace
}  // namespace spurious
