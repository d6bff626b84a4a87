#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spurious/dgp.hpp"
#include "spurious/regress.hpp"

namespace spurious {

/// One Monte Carlo configuration: two independent processes, one fitted
/// regression, one sample size.
///
/// Replication r = 1..R draws y from RngStream(seed, 2r) and x from
/// RngStream(seed, 2r + 1), so cells sharing a seed see identical data
/// regardless of the regression or estimator being evaluated.
struct McCell {
    DgpSpec dgp_y;
    DgpSpec dgp_x;
    RegressionSpec regression;
    Estimator estimator = Estimator::Ols;
    std::size_t T = 100;
    std::size_t replications = 2000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    CriticalMode critical = CriticalMode::Student;
    std::optional<std::size_t> nw_lag;
    FglsMethod fgls_method = FglsMethod::Iterated;

    FitOptions fit_options() const { return {estimator, nw_lag, fgls_method}; }
    void validate() const;
};

struct McResult {
    double rejection_rate = 0.0;  ///< NaN when every replication failed
    double mc_std_error = 0.0;    ///< sqrt(p (1 - p) / R)
    std::size_t failures = 0;
    std::size_t replications = 0;
    bool flagged = false;  ///< failures / R >= 0.001
};

inline constexpr double kFailureFlagFraction = 0.001;

struct ReplicationOutcome {
    bool ok = false;
    bool rejected = false;
    double t_gamma = 0.0;
    std::string error;  ///< message of the numerical failure, if any
};

/// Draw the (y, x) pair of replication r.
std::pair<Series, Series> replication_data(const McCell& cell, std::size_t r);

/// Per-replication outcomes, index r - 1 for replication r.
std::vector<ReplicationOutcome> run_cell_detailed(const McCell& cell, unsigned threads = 1);

McResult summarize(std::span<const ReplicationOutcome> outcomes);

McResult run_cell(const McCell& cell, unsigned threads = 1);

enum class TableId { T3, T4, T5, T6, T7, T8, TB1, R2Hist, Custom };

std::optional<TableId> parse_table_id(std::string_view text);
std::string to_string(TableId id);

struct TableOverrides {
    std::vector<std::size_t> T_values;  ///< empty: {50, 100}, or {100} for TB1 and R2HIST
    std::size_t replications = 2000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    CriticalMode critical = CriticalMode::Student;
    std::optional<std::size_t> nw_lag;
    FglsMethod fgls_method = FglsMethod::Iterated;
    unsigned threads = 1;
    double intercept_y = 0.8;
    double intercept_x = 0.8;
    /// Level-break magnitudes for trend-stationary processes in the break tables.
    double level_break_y = 0.0;
    double level_break_x = 0.0;
};

struct ColumnPlan {
    std::string label;
    RegressionSpec regression;
    Estimator estimator = Estimator::Ols;
};

struct RowPlan {
    std::vector<std::pair<std::string, double>> params;
    DgpSpec dgp_y;
    DgpSpec dgp_x;
    std::vector<ColumnPlan> columns;
};

struct TablePlan {
    TableId id = TableId::T3;
    std::string title;
    std::vector<std::string> column_labels;
    std::vector<std::size_t> T_values;
    std::vector<RowPlan> rows;
    std::vector<std::string> notes;
};

/// The parameter grid and regression columns of a built-in table.
TablePlan table_plan(TableId id, const TableOverrides& overrides = {});

struct McTableCell {
    std::size_t row = 0;
    std::size_t column = 0;
    std::size_t T = 0;
    McCell cell;
    McResult result;
};

struct McTable {
    TablePlan plan;
    TableOverrides overrides;
    std::vector<McTableCell> cells;  ///< row-major, then column, then T

    const McTableCell& at(std::size_t row, std::size_t column, std::size_t T) const;
};

/// Run every cell of a built-in table (not R2HIST, see run_specified_model_study).
McTable run_table(TableId id, const TableOverrides& overrides = {});

/// Run an arbitrary plan (used for configuration-file grids).
McTable run_plan(const TablePlan& plan, const TableOverrides& overrides);

/// One CSV row per cell with full-precision numbers.
void write_table_csv(std::ostream& out, const McTable& table);

/// Aligned text in the table row/column layout; rates above 0.10 carry '*'.
void write_table_text(std::ostream& out, const McTable& table);

enum class SpecifiedCase { TsTs, I1Ts };

std::optional<SpecifiedCase> parse_specified_case(std::string_view text);
std::string to_string(SpecifiedCase c);

/// Correctly specified model y = 0.8 + gamma x + u with x TS(0.8, 0.2, 0.3)
/// and u either AR(1) with phi = 0.3 (TsTs) or a random walk (I1Ts), fitted
/// by regression 3.
struct SpecifiedModelStudy {
    SpecifiedCase which = SpecifiedCase::TsTs;
    double gamma_true = 0.2;
    std::size_t T = 0;
    std::vector<double> coefficients;  ///< successful replications only
    std::vector<double> t_stats;
    double jb_coefficients = 0.0;
    double jb_t_stats = 0.0;
    double rejection_rate = 0.0;
    std::size_t failures = 0;
};

struct SpecifiedModelOptions {
    std::size_t T = 10000;
    std::size_t replications = 1000;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    CriticalMode critical = CriticalMode::Student;
    FglsMethod fgls_method = FglsMethod::Iterated;
    unsigned threads = 1;
};

SpecifiedModelStudy run_specified_model_study(SpecifiedCase which, double gamma_true,
                                              const SpecifiedModelOptions& options);

/// Histogram-ready CSV: case,replication,gamma_hat,t_stat.
void write_study_csv(std::ostream& out, const SpecifiedModelStudy& study);

}  // namespace spurious
