#include "spurious/montecarlo.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "spurious/diagnostics.hpp"
#include "spurious/errors.hpp"
#include "spurious/parallel.hpp"

namespace spurious {

void McCell::validate() const {
    dgp_y.validate();
    dgp_x.validate();
    regression.validate();
    if (replications < 1) throw ParameterError("McCell: replications must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("McCell: alpha must lie in (0, 1)");
    if (T < 2) throw ParameterError("McCell: T must be >= 2");
    for (const auto& b : dgp_y.breaks) resolve_break(b, T);
    for (const auto& b : dgp_x.breaks) resolve_break(b, T);
    for (const auto& b : regression.y_breaks) resolve_break(b, T);
}

std::pair<Series, Series> replication_data(const McCell& cell, std::size_t r) {
    RngStream y_stream(cell.seed, 2 * r);
    RngStream x_stream(cell.seed, 2 * r + 1);
    Series y = generate(cell.dgp_y, cell.T, y_stream);
    Series x = generate(cell.dgp_x, cell.T, x_stream);
    return {std::move(y), std::move(x)};
}

namespace {

// The critical value depends only on the cell, never on the draws.
double cell_critical_value(const McCell& cell) {
    return critical_value(cell.critical, residual_df(cell.regression, cell.fit_options(), cell.T), cell.alpha);
}

}  // namespace

std::vector<ReplicationOutcome> run_cell_detailed(const McCell& cell, unsigned threads) {
    cell.validate();
    const double crit = cell_critical_value(cell);
    const FitOptions options = cell.fit_options();
    std::vector<ReplicationOutcome> outcomes(cell.replications);
    parallel_for(cell.replications, threads, [&](std::size_t i) {
        const auto [y, x] = replication_data(cell, i + 1);
        ReplicationOutcome& out = outcomes[i];
        try {
            const FitResult fit = fit_regression(cell.regression, x, y, options);
            const double t = fit.gamma_t();
            if (!std::isfinite(t)) {
                out.error = "non-finite t statistic";
                return;
            }
            out.ok = true;
            out.t_gamma = t;
            out.rejected = std::abs(t) > crit;
        } catch (const Error& e) {
            out.error = e.what();
        }
    });
    return outcomes;
}

McResult summarize(std::span<const ReplicationOutcome> outcomes) {
    McResult result;
    result.replications = outcomes.size();
    std::size_t rejected = 0;
    for (const auto& o : outcomes) {
        if (!o.ok) {
            ++result.failures;
        } else if (o.rejected) {
            ++rejected;
        }
    }
    const std::size_t ok = result.replications - result.failures;
    if (ok == 0) {
        result.rejection_rate = std::numeric_limits<double>::quiet_NaN();
        result.mc_std_error = std::numeric_limits<double>::quiet_NaN();
        result.flagged = true;
        return result;
    }
    const double p = static_cast<double>(rejected) / static_cast<double>(ok);
    result.rejection_rate = p;
    result.mc_std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(ok));
    result.flagged = static_cast<double>(result.failures) >=
                     kFailureFlagFraction * static_cast<double>(result.replications);
    return result;
}

McResult run_cell(const McCell& cell, unsigned threads) {
    const auto outcomes = run_cell_detailed(cell, threads);
    return summarize(outcomes);
}

std::optional<TableId> parse_table_id(std::string_view text) {
    if (text == "T3") return TableId::T3;
    if (text == "T4") return TableId::T4;
    if (text == "T5") return TableId::T5;
    if (text == "T6") return TableId::T6;
    if (text == "T7") return TableId::T7;
    if (text == "T8") return TableId::T8;
    if (text == "TB1") return TableId::TB1;
    if (text == "R2HIST") return TableId::R2Hist;
    return std::nullopt;
}

std::string to_string(TableId id) {
    switch (id) {
        case TableId::T3: return "T3";
        case TableId::T4: return "T4";
        case TableId::T5: return "T5";
        case TableId::T6: return "T6";
        case TableId::T7: return "T7";
        case TableId::T8: return "T8";
        case TableId::TB1: return "TB1";
        case TableId::R2Hist: return "R2HIST";
        case TableId::Custom: return "custom";
    }
    return "?";
}

namespace {

constexpr double kTrend = 0.2;
constexpr double kYBreakAt = 0.5;
constexpr double kXBreakAt = 0.2;

const std::vector<std::pair<double, double>> kTrendPairs = {{0.0, 0.0}, {0.0, 0.2}, {0.2, 0.0}, {0.2, 0.2}};
const std::vector<std::pair<double, double>> kArPairs = {{0.0, 0.0}, {0.3, 0.3}, {0.9, 0.9}, {0.0, 0.9}, {0.9, 0.0}};
const std::vector<std::pair<double, double>> kBreakPairs = {{0.0, 0.2}, {0.2, 0.0}, {0.2, 0.2}};
const std::vector<double> kArSingle = {0.0, 0.3, 0.9};

ColumnPlan column(std::string label, int number, Estimator est, std::vector<BreakSpec> y_breaks = {}) {
    ColumnPlan c;
    c.label = std::move(label);
    c.regression.number = number;
    c.regression.y_breaks = std::move(y_breaks);
    c.estimator = est;
    return c;
}

ColumnPlan ols_or_fgls(std::string label, double phi_y, std::vector<BreakSpec> y_breaks) {
    const bool breaks = !y_breaks.empty();
    if (phi_y == 0.0) return column(std::move(label), breaks ? 4 : 2, Estimator::Ols, std::move(y_breaks));
    return column(std::move(label), breaks ? 5 : 3, Estimator::Fgls, std::move(y_breaks));
}

// Trend-stationary process with optional slope and level breaks at `at`.
DgpSpec ts_with_breaks(double mu, double beta, double phi, double slope_break, double level_break, double at) {
    DgpSpec spec = DgpSpec::trend_stationary(mu, beta, phi);
    if (slope_break != 0.0) spec.breaks.push_back(BreakSpec::slope_at(at, slope_break));
    if (level_break != 0.0) spec.breaks.push_back(BreakSpec::level_at(at, level_break));
    if (!spec.breaks.empty()) spec.kind = ProcessKind::TrendStationaryBreak;
    return spec;
}

DgpSpec i1_with_break(double drift, double drift_break, double at) {
    DgpSpec spec = DgpSpec::integrated(drift);
    if (drift_break != 0.0) {
        spec.kind = ProcessKind::IntegratedBreak;
        spec.breaks.push_back(BreakSpec::level_at(at, drift_break));
    }
    return spec;
}

// Regressors that absorb the breaks of y: DT for slope (and drift) breaks, DU for level breaks.
std::vector<BreakSpec> y_break_regressors(const DgpSpec& y) {
    std::vector<BreakSpec> out;
    for (const auto& b : y.breaks) {
        const BreakKind kind = is_integrated(y.kind) ? BreakKind::Slope : b.kind;
        out.push_back({kind, b.location, 1.0});
    }
    return out;
}

std::vector<std::size_t> default_T(TableId id, const TableOverrides& o) {
    if (!o.T_values.empty()) return o.T_values;
    if (id == TableId::TB1 || id == TableId::R2Hist) return {100};
    return {50, 100};
}

}  // namespace

TablePlan table_plan(TableId id, const TableOverrides& o) {
    TablePlan plan;
    plan.id = id;
    plan.T_values = default_T(id, o);
    const double mu_y = o.intercept_y;
    const double mu_x = o.intercept_x;

    switch (id) {
        case TableId::T3:
        case TableId::TB1: {
            const bool b1 = id == TableId::TB1;
            plan.title = b1 ? "Comparison of rejection rates, Case 1A (TS-TS, no breaks)"
                            : "Proportion of rejections, Case 1A (TS-TS, no breaks)";
            plan.column_labels = b1 ? std::vector<std::string>{"Regression 2", "Regression 2(NW)", "Regression 3"}
                                    : std::vector<std::string>{"Regression 1", "Regression 2 or 3"};
            for (const auto& [by, bx] : kTrendPairs) {
                if (b1 && by == 0.0) continue;
                for (const auto& [py, px] : kArPairs) {
                    RowPlan row;
                    row.params = {{"beta_y", by}, {"beta_x", bx}, {"phi_y", py}, {"phi_x", px}};
                    row.dgp_y = DgpSpec::trend_stationary(mu_y, by, py);
                    row.dgp_x = DgpSpec::trend_stationary(mu_x, bx, px);
                    if (b1) {
                        row.columns = {column(plan.column_labels[0], 2, Estimator::Ols),
                                       column(plan.column_labels[1], 2, Estimator::NeweyWest),
                                       column(plan.column_labels[2], 3, Estimator::Fgls)};
                    } else {
                        row.columns = {column(plan.column_labels[0], 1, Estimator::Ols),
                                       ols_or_fgls(plan.column_labels[1], py, {})};
                    }
                    plan.rows.push_back(std::move(row));
                }
            }
            break;
        }
        case TableId::T4: {
            plan.title = "Proportion of rejections, Case 1B (TS-TS with structural breaks)";
            plan.column_labels = {"Regression 1", "Regression 2-5"};
            for (const auto& [b1y, b1x] : kBreakPairs) {
                for (const auto& [py, px] : kArPairs) {
                    RowPlan row;
                    row.params = {{"beta1_y", b1y}, {"beta1_x", b1x}, {"phi_y", py}, {"phi_x", px}};
                    row.dgp_y = ts_with_breaks(mu_y, kTrend, py, b1y, o.level_break_y, kYBreakAt);
                    row.dgp_x = ts_with_breaks(mu_x, kTrend, px, b1x, o.level_break_x, kXBreakAt);
                    row.columns = {column(plan.column_labels[0], 1, Estimator::Ols),
                                   ols_or_fgls(plan.column_labels[1], py, y_break_regressors(row.dgp_y))};
                    plan.rows.push_back(std::move(row));
                }
            }
            break;
        }
        case TableId::T5: {
            plan.title = "Proportion of rejections, Case 2A (TS-I(1), no breaks)";
            plan.column_labels = {"Regression 1", "Regression 2 or 3"};
            for (const auto& [by, bx] : kTrendPairs) {
                for (double py : kArSingle) {
                    RowPlan row;
                    row.params = {{"beta_y", by}, {"beta_x", bx}, {"phi_y", py}};
                    row.dgp_y = DgpSpec::trend_stationary(mu_y, by, py);
                    row.dgp_x = DgpSpec::integrated(bx);
                    row.columns = {column(plan.column_labels[0], 1, Estimator::Ols),
                                   ols_or_fgls(plan.column_labels[1], py, {})};
                    plan.rows.push_back(std::move(row));
                }
            }
            break;
        }
        case TableId::T6: {
            plan.title = "Proportion of rejections, Case 2B (TS-I(1) with structural breaks)";
            plan.column_labels = {"Regression 1", "Regression 2-5"};
            for (const auto& [b1y, b1x] : kBreakPairs) {
                for (double py : kArSingle) {
                    RowPlan row;
                    row.params = {{"beta1_y", b1y}, {"beta1_x", b1x}, {"phi_y", py}};
                    row.dgp_y = ts_with_breaks(mu_y, kTrend, py, b1y, o.level_break_y, kYBreakAt);
                    row.dgp_x = i1_with_break(kTrend, b1x, kXBreakAt);
                    row.columns = {column(plan.column_labels[0], 1, Estimator::Ols),
                                   ols_or_fgls(plan.column_labels[1], py, y_break_regressors(row.dgp_y))};
                    plan.rows.push_back(std::move(row));
                }
            }
            break;
        }
        case TableId::T7: {
            plan.title = "Proportion of rejections, Case 3A (I(1)-TS, no breaks)";
            plan.column_labels = {"Regression 2", "Regression 3"};
            for (const auto& [by, bx] : kTrendPairs) {
                for (double px : kArSingle) {
                    RowPlan row;
                    row.params = {{"beta_y", by}, {"beta_x", bx}, {"phi_x", px}};
                    row.dgp_y = DgpSpec::integrated(by);
                    row.dgp_x = DgpSpec::trend_stationary(mu_x, bx, px);
                    row.columns = {column(plan.column_labels[0], 2, Estimator::Ols),
                                   column(plan.column_labels[1], 3, Estimator::Fgls)};
                    plan.rows.push_back(std::move(row));
                }
            }
            break;
        }
        case TableId::T8: {
            plan.title = "Proportion of rejections, Case 3B (I(1)-TS with structural breaks)";
            plan.column_labels = {"Regression 2", "Regression 3 or 5"};
            for (const auto& [b1y, b1x] : kBreakPairs) {
                for (double px : kArSingle) {
                    RowPlan row;
                    row.params = {{"beta1_y", b1y}, {"beta1_x", b1x}, {"phi_x", px}};
                    row.dgp_y = i1_with_break(kTrend, b1y, kYBreakAt);
                    row.dgp_x = ts_with_breaks(mu_x, kTrend, px, b1x, o.level_break_x, kXBreakAt);
                    auto y_breaks = y_break_regressors(row.dgp_y);
                    const int corrected = y_breaks.empty() ? 3 : 5;
                    row.columns = {column(plan.column_labels[0], 2, Estimator::Ols),
                                   column(plan.column_labels[1], corrected, Estimator::Fgls, std::move(y_breaks))};
                    plan.rows.push_back(std::move(row));
                }
            }
            break;
        }
        case TableId::R2Hist: {
            plan.title = "Correctly specified model y = 0.8 + 0.2 x + u, regression 3";
            plan.column_labels = {"Regression 3"};
            for (double which : {0.0, 1.0}) {
                RowPlan row;
                row.params = {{"case_i1ts", which}, {"gamma", 0.2}};
                row.dgp_y = which == 0.0 ? DgpSpec::trend_stationary(0.0, 0.0, 0.3) : DgpSpec::integrated(0.0);
                row.dgp_x = DgpSpec::trend_stationary(0.8, 0.2, 0.3);
                row.columns = {column(plan.column_labels[0], 3, Estimator::Fgls)};
                plan.rows.push_back(std::move(row));
            }
            break;
        }
        case TableId::Custom:
            throw ParameterError("table_plan: custom grids come from a configuration file");
    }

    if (id == TableId::T4 || id == TableId::T6 || id == TableId::T8) {
        plan.notes.push_back("breaks: y at floor(T/2), x at floor(T/5); level-break magnitudes mu1_y=" +
                             std::to_string(o.level_break_y) + ", mu1_x=" + std::to_string(o.level_break_x) +
                             " (configurable)");
    }
    if (id == TableId::TB1) {
        plan.notes.push_back("Newey-West lag: " + (o.nw_lag ? std::to_string(*o.nw_lag)
                                                             : std::string("floor(4 (T/100)^(2/9))")));
    }
    return plan;
}

const McTableCell& McTable::at(std::size_t row, std::size_t column, std::size_t T) const {
    for (const auto& c : cells) {
        if (c.row == row && c.column == column && c.T == T) return c;
    }
    throw ParameterError("McTable: no cell at the requested position");
}

McTable run_plan(const TablePlan& plan, const TableOverrides& overrides) {
    McTable table;
    table.plan = plan;
    table.overrides = overrides;
    for (std::size_t r = 0; r < plan.rows.size(); ++r) {
        const RowPlan& row = plan.rows[r];
        for (std::size_t c = 0; c < row.columns.size(); ++c) {
            for (std::size_t T : plan.T_values) {
                McTableCell entry;
                entry.row = r;
                entry.column = c;
                entry.T = T;
                entry.cell.dgp_y = row.dgp_y;
                entry.cell.dgp_x = row.dgp_x;
                entry.cell.regression = row.columns[c].regression;
                entry.cell.estimator = row.columns[c].estimator;
                entry.cell.T = T;
                entry.cell.replications = overrides.replications;
                entry.cell.seed = overrides.seed;
                entry.cell.alpha = overrides.alpha;
                entry.cell.critical = overrides.critical;
                entry.cell.nw_lag = overrides.nw_lag;
                entry.cell.fgls_method = overrides.fgls_method;
                entry.result = run_cell(entry.cell, overrides.threads);
                table.cells.push_back(std::move(entry));
            }
        }
    }
    return table;
}

McTable run_table(TableId id, const TableOverrides& overrides) {
    if (id != TableId::R2Hist) return run_plan(table_plan(id, overrides), overrides);

    McTable table;
    table.plan = table_plan(id, overrides);
    table.overrides = overrides;
    for (std::size_t r = 0; r < table.plan.rows.size(); ++r) {
        const SpecifiedCase which = r == 0 ? SpecifiedCase::TsTs : SpecifiedCase::I1Ts;
        for (std::size_t T : table.plan.T_values) {
            SpecifiedModelOptions options;
            options.T = T;
            options.replications = overrides.replications;
            options.seed = overrides.seed;
            options.alpha = overrides.alpha;
            options.critical = overrides.critical;
            options.fgls_method = overrides.fgls_method;
            options.threads = overrides.threads;
            const SpecifiedModelStudy study = run_specified_model_study(which, 0.2, options);

            McTableCell entry;
            entry.row = r;
            entry.column = 0;
            entry.T = T;
            entry.cell.dgp_y = table.plan.rows[r].dgp_y;
            entry.cell.dgp_x = table.plan.rows[r].dgp_x;
            entry.cell.regression.number = 3;
            entry.cell.estimator = Estimator::Fgls;
            entry.cell.T = T;
            entry.cell.replications = overrides.replications;
            entry.cell.seed = overrides.seed;
            entry.result.replications = overrides.replications;
            entry.result.failures = study.failures;
            entry.result.rejection_rate = study.rejection_rate;
            const double p = study.rejection_rate;
            entry.result.mc_std_error =
                std::sqrt(p * (1.0 - p) / static_cast<double>(overrides.replications - study.failures));
            entry.result.flagged = static_cast<double>(study.failures) >=
                                   kFailureFlagFraction * static_cast<double>(overrides.replications);
            table.cells.push_back(std::move(entry));
            table.plan.notes.push_back(to_string(which) + " T=" + std::to_string(T) +
                                       ": JB(gamma_hat)=" + std::to_string(study.jb_coefficients) +
                                       ", JB(t)=" + std::to_string(study.jb_t_stats));
        }
    }
    return table;
}

std::optional<SpecifiedCase> parse_specified_case(std::string_view text) {
    if (text == "TSTS") return SpecifiedCase::TsTs;
    if (text == "I1TS") return SpecifiedCase::I1Ts;
    return std::nullopt;
}

std::string to_string(SpecifiedCase c) { return c == SpecifiedCase::TsTs ? "TSTS" : "I1TS"; }

SpecifiedModelStudy run_specified_model_study(SpecifiedCase which, double gamma_true,
                                              const SpecifiedModelOptions& options) {
    if (options.replications < 1) throw ParameterError("specified model study: replications must be >= 1");
    const DgpSpec x_spec = DgpSpec::trend_stationary(0.8, 0.2, 0.3);
    const DgpSpec u_spec =
        which == SpecifiedCase::TsTs ? DgpSpec::trend_stationary(0.0, 0.0, 0.3) : DgpSpec::integrated(0.0);
    RegressionSpec spec;
    spec.number = 3;
    const FitOptions fit_options{Estimator::Fgls, std::nullopt, options.fgls_method};
    const double crit = critical_value(options.critical, residual_df(spec, fit_options, options.T), options.alpha);

    const std::size_t R = options.replications;
    std::vector<double> coef(R);
    std::vector<double> tstat(R);
    std::vector<char> ok(R, 0);
    parallel_for(R, options.threads, [&](std::size_t i) {
        const std::size_t r = i + 1;
        RngStream u_stream(options.seed, 2 * r);
        RngStream x_stream(options.seed, 2 * r + 1);
        const Series u = generate(u_spec, options.T, u_stream);
        const Series x = generate(x_spec, options.T, x_stream);
        Series y(options.T);
        for (std::size_t t = 0; t < options.T; ++t) y[t] = 0.8 + gamma_true * x[t] + u[t];
        try {
            const FitResult fit = fit_regression(spec, x, y, fit_options);
            coef[i] = fit.gamma();
            tstat[i] = fit.gamma_t();
            ok[i] = std::isfinite(tstat[i]) ? 1 : 0;
        } catch (const Error&) {
            ok[i] = 0;
        }
    });

    SpecifiedModelStudy study;
    study.which = which;
    study.gamma_true = gamma_true;
    study.T = options.T;
    std::size_t rejected = 0;
    for (std::size_t i = 0; i < R; ++i) {
        if (!ok[i]) {
            ++study.failures;
            continue;
        }
        study.coefficients.push_back(coef[i]);
        study.t_stats.push_back(tstat[i]);
        if (std::abs(tstat[i]) > crit) ++rejected;
    }
    if (study.coefficients.empty()) throw NumericalQualityError("specified model study: every replication failed");
    study.rejection_rate = static_cast<double>(rejected) / static_cast<double>(study.coefficients.size());
    if (study.coefficients.size() >= 4) {
        study.jb_coefficients = jarque_bera(study.coefficients);
        study.jb_t_stats = jarque_bera(study.t_stats);
    }
    return study;
}

namespace {

std::string format_double(double value, const char* fmt = "%.17g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

double param_or_nan(const RowPlan& row, std::string_view name) {
    for (const auto& [key, value] : row.params) {
        if (key == name) return value;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string csv_param(const RowPlan& row, std::string_view name) {
    const double v = param_or_nan(row, name);
    return std::isnan(v) ? std::string() : format_double(v, "%.6g");
}

}  // namespace

void write_table_csv(std::ostream& out, const McTable& table) {
    out << "table,beta_y,beta_x,beta1_y,beta1_x,phi_y,phi_x,column,regression,estimator,T,reps,rate,mc_se,"
           "failures,flagged\n";
    for (const auto& c : table.cells) {
        const RowPlan& row = table.plan.rows[c.row];
        const ColumnPlan& col = row.columns[c.column];
        out << to_string(table.plan.id) << ',' << csv_param(row, "beta_y") << ',' << csv_param(row, "beta_x")
            << ',' << csv_param(row, "beta1_y") << ',' << csv_param(row, "beta1_x") << ','
            << csv_param(row, "phi_y") << ',' << csv_param(row, "phi_x") << ",\"" << col.label << "\","
            << col.regression.number << ',' << to_string(col.estimator) << ',' << c.T << ','
            << c.result.replications << ',' << format_double(c.result.rejection_rate) << ','
            << format_double(c.result.mc_std_error) << ',' << c.result.failures << ','
            << (c.result.flagged ? 1 : 0) << '\n';
    }
}

void write_table_text(std::ostream& out, const McTable& table) {
    const TablePlan& plan = table.plan;
    out << plan.title << '\n';
    out << "R = " << table.overrides.replications << ", alpha = " << table.overrides.alpha
        << ", critical values: " << to_string(table.overrides.critical) << ", seed = " << table.overrides.seed
        << "\n\n";

    // Header: parameter names, then one column per (label, T).
    std::vector<std::string> param_names;
    if (!plan.rows.empty()) {
        for (const auto& [key, value] : plan.rows.front().params) param_names.push_back(key);
    }
    std::ostringstream header;
    for (const auto& name : param_names) header << std::setw(9) << name;
    for (const auto& label : plan.column_labels) {
        for (std::size_t T : plan.T_values) {
            header << "  " << std::setw(22) << (label + " T=" + std::to_string(T));
        }
    }
    out << header.str() << '\n';

    bool any_flag = false;
    for (std::size_t r = 0; r < plan.rows.size(); ++r) {
        const RowPlan& row = plan.rows[r];
        for (const auto& [key, value] : row.params) out << std::setw(9) << format_double(value, "%.2f");
        for (std::size_t c = 0; c < row.columns.size(); ++c) {
            for (std::size_t T : plan.T_values) {
                const McTableCell& cell = table.at(r, c, T);
                std::string text = std::isnan(cell.result.rejection_rate)
                                       ? std::string("n/a")
                                       : format_double(cell.result.rejection_rate, "%.4f");
                if (cell.result.rejection_rate > 0.10) text += '*';
                if (cell.result.flagged) {
                    text += '!';
                    any_flag = true;
                }
                if (plan.column_labels.size() > 1 || row.columns.size() > 1) {
                    // Columns whose regression varies by row name the regression actually used.
                    const auto& label = row.columns[c].label;
                    if (label.find(" or ") != std::string::npos || label.find('-') != std::string::npos) {
                        text = "(" + std::to_string(row.columns[c].regression.number) + ") " + text;
                    }
                }
                out << "  " << std::setw(22) << text;
            }
        }
        out << '\n';
    }
    out << "\n* rejection rate above 0.10\n";
    if (any_flag) out << "! numerical failures in at least 0.1% of replications\n";
    for (const auto& note : plan.notes) out << "note: " << note << '\n';
}

void write_study_csv(std::ostream& out, const SpecifiedModelStudy& study) {
    out << "case,replication,gamma_hat,t_stat\n";
    for (std::size_t i = 0; i < study.coefficients.size(); ++i) {
        out << to_string(study.which) << ',' << (i + 1) << ',' << format_double(study.coefficients[i]) << ','
            << format_double(study.t_stats[i]) << '\n';
    }
}

}  // namespace spurious
