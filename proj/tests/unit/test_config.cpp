#include <gtest/gtest.h>

#include <string>

#include "spurious/errors.hpp"
#include "spurious/experiment_config.hpp"

namespace spurious {
namespace {

const char* kMinimal = R"(
T: [40]
columns:
  - {label: "A", regression: 2}
rows:
  - y: {process: TS, trend: 0.2, ar: 0.5}
    x: {process: I1, drift: 0.1}
)";

TEST(ExperimentConfig, BundledExampleParses) {
    const ExperimentConfig cfg = load_experiment_config(SPURIOUS_SOURCE_DIR "/configs/custom_grid.yaml");
    EXPECT_EQ(cfg.plan.id, TableId::Custom);
    EXPECT_EQ(cfg.plan.T_values, (std::vector<std::size_t>{50, 100, 200}));
    ASSERT_EQ(cfg.plan.rows.size(), 2u);
    ASSERT_EQ(cfg.plan.column_labels.size(), 3u);
    const RowPlan& row = cfg.plan.rows[1];
    EXPECT_EQ(row.dgp_y.kind, ProcessKind::TrendStationaryBreak);
    EXPECT_DOUBLE_EQ(row.dgp_y.ar, 0.9);
    ASSERT_EQ(row.dgp_y.breaks.size(), 1u);
    EXPECT_EQ(row.dgp_y.breaks[0].kind, BreakKind::Slope);
    EXPECT_DOUBLE_EQ(std::get<double>(row.dgp_y.breaks[0].location), 0.5);
    EXPECT_EQ(row.dgp_x.kind, ProcessKind::Integrated);
    EXPECT_EQ(row.columns[1].estimator, Estimator::Fgls);
    EXPECT_EQ(row.columns[2].regression.number, 5);
    EXPECT_DOUBLE_EQ(row.columns[2].regression.y_breaks[0].magnitude, 1.0);
    EXPECT_EQ(cfg.overrides.replications, 2000u);
    EXPECT_EQ(cfg.overrides.fgls_method, FglsMethod::Iterated);
}

TEST(ExperimentConfig, DefaultsAndRunnable) {
    ExperimentConfig cfg = parse_experiment_config(kMinimal);
    EXPECT_EQ(cfg.overrides.replications, 2000u);
    EXPECT_EQ(cfg.overrides.critical, CriticalMode::Student);
    EXPECT_DOUBLE_EQ(cfg.overrides.alpha, 0.05);
    EXPECT_EQ(cfg.plan.rows[0].columns[0].estimator, Estimator::Ols);
    cfg.overrides.replications = 20;
    const McTable table = run_plan(cfg.plan, cfg.overrides);
    EXPECT_EQ(table.cells.size(), 1u);
    EXPECT_EQ(table.cells[0].result.replications, 20u);
}

TEST(ExperimentConfig, BreakIndexVersusFraction) {
    const ExperimentConfig cfg = parse_experiment_config(R"(
T: [40]
columns: [{label: "B", regression: 4, y_breaks: [{kind: level, at: 12}]}]
rows:
  - y: {process: TS_BREAK, breaks: [{kind: level, at: 12, magnitude: 1.5}]}
    x: {process: TS, ar: 0.3}
)");
    const auto& brk = cfg.plan.rows[0].dgp_y.breaks[0];
    EXPECT_EQ(brk.kind, BreakKind::Level);
    EXPECT_EQ(std::get<std::size_t>(brk.location), 12u);
    EXPECT_DOUBLE_EQ(brk.magnitude, 1.5);
}

void expect_rejected(const std::string& doc, const std::string& fragment) {
    try {
        parse_experiment_config(doc);
        FAIL() << "accepted: " << doc;
    } catch (const ParameterError& e) {
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

TEST(ExperimentConfig, Errors) {
    expect_rejected("[1, 2]", "top level must be a map");
    expect_rejected("T: [", "malformed document");
    expect_rejected("T: []\ncolumns: []\nrows: []", "'T' must be a non-empty list");
    expect_rejected("T: [2]\n", "every T must be >= 3");
    expect_rejected(std::string(kMinimal) + "critical: gauss\n", "'critical' must be student or normal");
    expect_rejected(std::string(kMinimal) + "fgls: forever\n", "'fgls' must be iterated or two-step");
    expect_rejected(std::string(kMinimal) + "alpha: 2\n", "'alpha' must lie in (0, 1)");
    expect_rejected("T: [40]\ncolumns: [{label: A, regression: 2}]\nrows:\n  - y: {process: AR}\n    x: {process: I1}\n",
                    "unknown process 'AR'");
    expect_rejected("T: [40]\ncolumns: [{label: A, regression: 2, estimator: lasso}]\nrows:\n  - y: {process: TS}\n"
                    "    x: {process: I1}\n",
                    "unknown estimator 'lasso'");
    expect_rejected("T: [40]\ncolumns: [{label: A, regression: 2}]\nrows:\n  - y: {process: TS}\n", "'x' process map");
    EXPECT_THROW(load_experiment_config("/nonexistent/grid.yaml"), LoadError);
}

}  // namespace
}  // namespace spurious
