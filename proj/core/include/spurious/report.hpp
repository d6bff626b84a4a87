#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spurious/dataset.hpp"
#include "spurious/diagnostics.hpp"
#include "spurious/regress.hpp"

namespace spurious {

inline constexpr const char* kYuleMortality = "mortality";
inline constexpr const char* kYuleMarriages = "marriages";

/// One fitted regression with its residual diagnostics.
struct RegressionBlock {
    int number = 1;
    Estimator estimator = Estimator::Ols;
    FitResult fit;
    DiagnosticsReport diagnostics;
};

struct YuleReport {
    std::string dataset;
    std::size_t T = 0;
    double correlation = 0.0;
    std::vector<RegressionBlock> blocks;  ///< regressions 1, 2 (OLS) and 3 (FGLS)
};

/// Regressions 1, 2 and 3 of mortality on the Church of England marriage proportion.
YuleReport yule_study(const Dataset& data, const std::string& y_column = kYuleMortality,
                      const std::string& x_column = kYuleMarriages);

/// Fixed four-decimal formatting used by every text report.
std::string format4(double value);

/// Two-sided significance at the 1% level against Student-t with the fit's df.
bool significant_at_1pct(double t_stat, std::size_t df);

/// Coefficient table with t-statistics in parentheses, '‡' marking 1% significance,
/// followed by Adj-R^2, DW and Q(10). Values are printed straight from the fits.
void write_yule_report(std::ostream& out, const YuleReport& report);

/// Single-fit report used by the `fit` subcommand.
void write_fit_report(std::ostream& out, const RegressionBlock& block, const std::string& y_name,
                      const std::string& x_name);

}  // namespace spurious
