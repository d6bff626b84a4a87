#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "spurious/errors.hpp"
#include "spurious/montecarlo.hpp"

namespace spurious {
namespace {

McCell small_cell(int regression, double phi_y = 0.9) {
    McCell cell;
    cell.dgp_y = DgpSpec::trend_stationary(0.8, 0.2, phi_y);
    cell.dgp_x = DgpSpec::integrated(0.2);
    cell.regression.number = regression;
    cell.estimator = default_estimator(cell.regression);
    cell.T = 60;
    cell.replications = 300;
    cell.seed = 5;
    return cell;
}

TEST(Summarize, RatesAndFlags) {
    std::vector<ReplicationOutcome> out(1000);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].ok = true;
        out[i].rejected = i % 10 == 0;
    }
    McResult r = summarize(out);
    EXPECT_DOUBLE_EQ(r.rejection_rate, 0.1);
    EXPECT_DOUBLE_EQ(r.mc_std_error, std::sqrt(0.1 * 0.9 / 1000.0));
    EXPECT_FALSE(r.flagged);

    out[1].ok = false;  // one failure in 1000 reaches the 0.1% flag threshold
    r = summarize(out);
    EXPECT_EQ(r.failures, 1u);
    EXPECT_DOUBLE_EQ(r.rejection_rate, 100.0 / 999.0);
    EXPECT_TRUE(r.flagged);
}

TEST(RunCell, ZeroRegressorFailsEveryReplication) {
    McCell cell = small_cell(2);
    cell.dgp_x = DgpSpec::trend_stationary(0.0, 0.0, 0.0, 0.0);
    const auto outcomes = run_cell_detailed(cell);
    for (const auto& o : outcomes) {
        EXPECT_FALSE(o.ok);
        EXPECT_NE(o.error.find("rank deficient"), std::string::npos);
    }
    const McResult r = summarize(outcomes);
    EXPECT_TRUE(std::isnan(r.rejection_rate));
    EXPECT_TRUE(r.flagged);
    EXPECT_EQ(r.failures, cell.replications);
}

TEST(RunCell, ValidatesTheCell) {
    McCell cell = small_cell(3);
    cell.replications = 0;
    EXPECT_THROW(run_cell(cell), ParameterError);
    cell = small_cell(3);
    cell.alpha = 0.0;
    EXPECT_THROW(run_cell(cell), ParameterError);
    cell = small_cell(4);
    cell.regression.y_breaks = {BreakSpec::slope_at(std::size_t{100}, 1.0)};
    EXPECT_THROW(run_cell(cell), ParameterError);
}

TEST(RunCell, ThreadCountDoesNotMatter) {
    for (int reg : {1, 2, 3}) {
        const McCell cell = small_cell(reg);
        const auto a = run_cell_detailed(cell, 1);
        const auto b = run_cell_detailed(cell, 3);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            EXPECT_EQ(a[i].t_gamma, b[i].t_gamma) << "replication " << i + 1;
            EXPECT_EQ(a[i].rejected, b[i].rejected);
        }
    }
}

TEST(RunCell, ReplicationDataIsSharedAcrossRegressions) {
    const McCell a = small_cell(1);
    const McCell b = small_cell(3);
    for (std::size_t r : {1u, 17u, 300u}) {
        EXPECT_EQ(replication_data(a, r), replication_data(b, r));
    }
    EXPECT_NE(replication_data(a, 1), replication_data(a, 2));
}

TEST(RunCell, InterceptsDoNotChangeDecisionsOfTrendRegressions) {
    for (int reg : {2, 3}) {
        McCell a = small_cell(reg, 0.5);
        a.dgp_x = DgpSpec::trend_stationary(0.8, 0.2, 0.5);
        McCell b = a;
        b.dgp_y.intercept = -40.0;
        b.dgp_x.intercept = 13.0;
        const auto oa = run_cell_detailed(a);
        const auto ob = run_cell_detailed(b);
        for (std::size_t i = 0; i < oa.size(); ++i) {
            EXPECT_EQ(oa[i].rejected, ob[i].rejected) << "regression " << reg << ", replication " << i + 1;
            EXPECT_NEAR(oa[i].t_gamma, ob[i].t_gamma, 1e-8 * std::max(1.0, std::abs(oa[i].t_gamma)));
        }
    }
}

TEST(TablePlan, GridSizes) {
    const std::vector<std::pair<TableId, std::size_t>> rows = {
        {TableId::T3, 20}, {TableId::T4, 15}, {TableId::T5, 12}, {TableId::T6, 9},
        {TableId::T7, 12}, {TableId::T8, 9},  {TableId::TB1, 10}, {TableId::R2Hist, 2}};
    for (const auto& [id, n] : rows) {
        const TablePlan plan = table_plan(id);
        EXPECT_EQ(plan.rows.size(), n) << to_string(id);
        for (const auto& row : plan.rows) EXPECT_EQ(row.columns.size(), plan.column_labels.size());
    }
    EXPECT_EQ(table_plan(TableId::T3).T_values, (std::vector<std::size_t>{50, 100}));
    EXPECT_EQ(table_plan(TableId::TB1).T_values, (std::vector<std::size_t>{100}));
    EXPECT_THROW(table_plan(TableId::Custom), ParameterError);
}

TEST(TablePlan, CorrectedColumnsFollowTheAutocorrelation) {
    for (const auto& row : table_plan(TableId::T3).rows) {
        const bool white = row.params[2].second == 0.0;
        EXPECT_EQ(row.columns[1].regression.number, white ? 2 : 3);
        EXPECT_EQ(row.columns[1].estimator, white ? Estimator::Ols : Estimator::Fgls);
    }
    for (const auto& row : table_plan(TableId::T4).rows) {
        const bool white = row.params[2].second == 0.0;
        const bool breaks = !row.dgp_y.breaks.empty();
        EXPECT_EQ(row.columns[1].regression.number, breaks ? (white ? 4 : 5) : (white ? 2 : 3));
        EXPECT_EQ(row.columns[1].regression.y_breaks.size(), row.dgp_y.breaks.size());
    }
    // The I(1) dependent variable of case 3B has its drift break absorbed by a DT column.
    const TablePlan t8 = table_plan(TableId::T8);
    EXPECT_EQ(t8.rows[0].columns[1].regression.number, 3);
    EXPECT_EQ(t8.rows[8].columns[1].regression.number, 5);
    EXPECT_EQ(t8.rows[8].columns[1].regression.y_breaks[0].kind, BreakKind::Slope);
}

TEST(TableId, ParseRoundTrip) {
    for (TableId id : {TableId::T3, TableId::T4, TableId::T5, TableId::T6, TableId::T7, TableId::T8, TableId::TB1,
                       TableId::R2Hist}) {
        EXPECT_EQ(parse_table_id(to_string(id)), id);
    }
    EXPECT_FALSE(parse_table_id("T9").has_value());
}

// Rows and columns whose reference T = 100 rate is starred as spurious.
struct Starred {
    TableId id;
    std::set<std::pair<std::size_t, std::size_t>> cells;
};

TEST(Tables, HeadlinePatternAtT100) {
    const std::vector<Starred> starred = {
        {TableId::T3, {{2, 0}, {6, 0}, {7, 0}, {9, 0}, {11, 0}, {12, 0}, {13, 0}, {15, 0}, {16, 0}, {17, 0},
                       {18, 0}, {19, 0}}},
        {TableId::T4, {}},
        {TableId::T5, {{1, 0}, {2, 0}, {4, 0}, {5, 0}, {6, 0}, {7, 0}, {8, 0}, {9, 0}, {10, 0}, {11, 0}}},
        {TableId::T6, {}},
        {TableId::T7, {{1, 0}, {2, 0}, {4, 0}, {5, 0}, {7, 0}, {8, 0}, {10, 0}, {11, 0}}},
        {TableId::T8, {}},
        {TableId::TB1, {{2, 0}, {2, 1}, {7, 0}, {7, 1}}},
    };
    TableOverrides o;
    o.T_values = {100};
    o.replications = 2000;
    for (const auto& s : starred) {
        const McTable table = run_table(s.id, o);
        const std::size_t corrected = table.plan.column_labels.size() - 1;
        for (const auto& cell : table.cells) {
            EXPECT_FALSE(cell.result.flagged) << to_string(s.id) << " row " << cell.row;
            if (s.cells.count({cell.row, cell.column})) {
                EXPECT_GT(cell.result.rejection_rate, 0.10) << to_string(s.id) << " row " << cell.row;
            }
            if (cell.column == corrected) {
                EXPECT_LT(cell.result.rejection_rate, 0.10) << to_string(s.id) << " row " << cell.row;
            }
        }
    }
}

TEST(Tables, CsvAndTextWriters) {
    TableOverrides o;
    o.T_values = {30};
    o.replications = 50;
    TablePlan plan = table_plan(TableId::T5, o);
    plan.rows.resize(2);
    const McTable table = run_plan(plan, o);
    EXPECT_EQ(table.cells.size(), 4u);
    EXPECT_EQ(&table.at(1, 1, 30), &table.cells[3]);
    EXPECT_THROW(table.at(0, 0, 31), ParameterError);

    std::ostringstream csv;
    write_table_csv(csv, table);
    std::istringstream lines(csv.str());
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header,
              "table,beta_y,beta_x,beta1_y,beta1_x,phi_y,phi_x,column,regression,estimator,T,reps,rate,mc_se,"
              "failures,flagged");
    std::string first;
    std::getline(lines, first);
    EXPECT_EQ(first.rfind("T5,0,0,,,0,,\"Regression 1\",1,OLS,30,50,", 0), 0u) << first;

    std::ostringstream text;
    write_table_text(text, table);
    EXPECT_NE(text.str().find("Regression 2 or 3 T=30"), std::string::npos);
}

TEST(SpecifiedModel, PowerUnbiasednessAndSize) {
    SpecifiedModelOptions options;
    options.T = 2000;
    options.replications = 300;
    const SpecifiedModelStudy power = run_specified_model_study(SpecifiedCase::TsTs, 0.2, options);
    EXPECT_GE(power.rejection_rate, 0.99);
    double mean = 0.0;
    for (double g : power.coefficients) mean += g;
    mean /= static_cast<double>(power.coefficients.size());
    double var = 0.0;
    for (double g : power.coefficients) var += (g - mean) * (g - mean);
    const double sd = std::sqrt(var / static_cast<double>(power.coefficients.size() - 1));
    EXPECT_NEAR(mean, 0.2, 3.0 * sd / std::sqrt(300.0));

    options.replications = 1000;
    options.T = 200;
    const SpecifiedModelStudy size = run_specified_model_study(SpecifiedCase::TsTs, 0.0, options);
    EXPECT_NEAR(size.rejection_rate, 0.05, 0.02);
    EXPECT_EQ(size.failures, 0u);

    std::ostringstream csv;
    write_study_csv(csv, size);
    EXPECT_EQ(csv.str().rfind("case,replication,gamma_hat,t_stat\nTSTS,1,", 0), 0u);
}

}  // namespace
}  // namespace spurious
