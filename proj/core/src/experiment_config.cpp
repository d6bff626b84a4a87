#include "spurious/experiment_config.hpp"

#include <fstream>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "spurious/errors.hpp"

namespace spurious {

namespace {

[[noreturn]] void fail(const std::string& message) { throw ParameterError("experiment config: " + message); }

template <class T>
T scalar(const YAML::Node& node, const std::string& what) {
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        fail("'" + what + "' has the wrong type");
    }
}

template <class T>
T scalar_or(const YAML::Node& parent, const char* key, T fallback) {
    const YAML::Node node = parent[key];
    return node ? scalar<T>(node, key) : fallback;
}

BreakLocation parse_location(const YAML::Node& node) {
    if (!node || !node.IsScalar()) fail("break needs a scalar 'at'");
    const std::string text = node.Scalar();
    if (text.find_first_of(".eE") != std::string::npos) return scalar<double>(node, "at");
    const auto value = scalar<long long>(node, "at");
    if (value < 0) fail("break index must be non-negative");
    return static_cast<std::size_t>(value);
}

BreakKind parse_break_kind(const std::string& text) {
    if (text == "level") return BreakKind::Level;
    if (text == "slope") return BreakKind::Slope;
    fail("unknown break kind '" + text + "' (level or slope)");
}

std::vector<BreakSpec> parse_breaks(const YAML::Node& node, double default_magnitude) {
    std::vector<BreakSpec> out;
    if (!node) return out;
    if (!node.IsSequence()) fail("'breaks' must be a list");
    for (const auto& item : node) {
        BreakSpec brk;
        brk.kind = parse_break_kind(scalar_or<std::string>(item, "kind", "slope"));
        brk.location = parse_location(item["at"]);
        brk.magnitude = scalar_or<double>(item, "magnitude", default_magnitude);
        out.push_back(brk);
    }
    return out;
}

DgpSpec parse_process(const YAML::Node& node, const char* which) {
    if (!node || !node.IsMap()) fail(std::string("row needs a '") + which + "' process map");
    const auto process = scalar_or<std::string>(node, "process", "TS");
    DgpSpec spec;
    if (process == "TS" || process == "TS_BREAK") {
        spec = DgpSpec::trend_stationary(scalar_or(node, "intercept", 0.0), scalar_or(node, "trend", 0.0),
                                         scalar_or(node, "ar", 0.0), scalar_or(node, "sd", 1.0));
        spec.kind = process == "TS" ? ProcessKind::TrendStationary : ProcessKind::TrendStationaryBreak;
    } else if (process == "I1" || process == "I1_BREAK") {
        spec = DgpSpec::integrated(scalar_or(node, "drift", 0.0), scalar_or(node, "sd", 1.0));
        spec.kind = process == "I1" ? ProcessKind::Integrated : ProcessKind::IntegratedBreak;
    } else {
        fail("unknown process '" + process + "'");
    }
    spec.breaks = parse_breaks(node["breaks"], 0.0);
    spec.validate();
    return spec;
}

Estimator parse_estimator(const YAML::Node& node, int regression) {
    if (!node) return regression == 3 || regression == 5 ? Estimator::Fgls : Estimator::Ols;
    const auto text = scalar<std::string>(node, "estimator");
    if (text == "ols") return Estimator::Ols;
    if (text == "nw" || text == "newey-west") return Estimator::NeweyWest;
    if (text == "fgls") return Estimator::Fgls;
    fail("unknown estimator '" + text + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text) {
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::Exception& e) {
        fail(std::string("malformed document: ") + e.what());
    }
    if (!root.IsMap()) fail("top level must be a map");

    ExperimentConfig config;
    TableOverrides& o = config.overrides;
    TablePlan& plan = config.plan;
    plan.id = TableId::Custom;
    plan.title = scalar_or<std::string>(root, "title", "Custom grid");

    const YAML::Node Ts = root["T"];
    if (!Ts || !Ts.IsSequence() || Ts.size() == 0) fail("'T' must be a non-empty list");
    for (const auto& t : Ts) {
        const auto value = scalar<long long>(t, "T");
        if (value < 3) fail("every T must be >= 3");
        o.T_values.push_back(static_cast<std::size_t>(value));
    }
    plan.T_values = o.T_values;

    const auto reps = scalar_or<long long>(root, "replications", 2000);
    if (reps < 1) fail("'replications' must be >= 1");
    o.replications = static_cast<std::size_t>(reps);
    o.seed = scalar_or<std::uint64_t>(root, "seed", 0);
    o.alpha = scalar_or(root, "alpha", 0.05);
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) fail("'alpha' must lie in (0, 1)");
    const auto crit = scalar_or<std::string>(root, "critical", "student");
    if (crit == "student") {
        o.critical = CriticalMode::Student;
    } else if (crit == "normal") {
        o.critical = CriticalMode::Normal;
    } else {
        fail("'critical' must be student or normal");
    }
    if (const YAML::Node fgls = root["fgls"]) {
        const auto method = parse_fgls_method(scalar<std::string>(fgls, "fgls"));
        if (!method) fail("'fgls' must be iterated or two-step");
        o.fgls_method = *method;
    }
    if (root["nw_lag"]) o.nw_lag = static_cast<std::size_t>(scalar<unsigned>(root["nw_lag"], "nw_lag"));

    const YAML::Node columns = root["columns"];
    if (!columns || !columns.IsSequence() || columns.size() == 0) fail("'columns' must be a non-empty list");
    std::vector<ColumnPlan> column_plans;
    for (const auto& c : columns) {
        ColumnPlan col;
        col.regression.number = scalar_or(c, "regression", 0);
        col.regression.y_breaks = parse_breaks(c["y_breaks"], 1.0);
        col.regression.validate();
        col.estimator = parse_estimator(c["estimator"], col.regression.number);
        col.label = scalar_or<std::string>(c, "label", "Regression " + std::to_string(col.regression.number));
        plan.column_labels.push_back(col.label);
        column_plans.push_back(std::move(col));
    }

    const YAML::Node rows = root["rows"];
    if (!rows || !rows.IsSequence() || rows.size() == 0) fail("'rows' must be a non-empty list");
    for (const auto& r : rows) {
        RowPlan row;
        if (const YAML::Node params = r["params"]) {
            if (!params.IsMap()) fail("'params' must be a map");
            for (const auto& kv : params) {
                row.params.emplace_back(kv.first.as<std::string>(), scalar<double>(kv.second, "params"));
            }
        }
        row.dgp_y = parse_process(r["y"], "y");
        row.dgp_x = parse_process(r["x"], "x");
        row.columns = column_plans;
        plan.rows.push_back(std::move(row));
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open configuration file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

}  // namespace spurious
