#include "spurious/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spurious/dataset.hpp"
#include "spurious/diagnostics.hpp"
#include "spurious/errors.hpp"
#include "spurious/experiment_config.hpp"
#include "spurious/limitdist.hpp"
#include "spurious/montecarlo.hpp"
#include "spurious/regress.hpp"
#include "spurious/report.hpp"

namespace spurious {

namespace {

/// Thrown for flag values that parse but make no sense; reported as a usage error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BreakLocation parse_break_location(const std::string& text) {
    try {
        std::size_t used = 0;
        if (text.find_first_of(".eE") != std::string::npos) {
            const double v = std::stod(text, &used);
            if (used == text.size()) return v;
        } else {
            const unsigned long long v = std::stoull(text, &used);
            if (used == text.size()) return static_cast<std::size_t>(v);
        }
    } catch (const std::logic_error&) {
    }
    throw UsageError("invalid break location '" + text + "' (a fraction such as 0.5 or an index such as 50)");
}

std::string format12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string table;
    std::string config;
    std::vector<std::size_t> T;
    std::size_t reps = 2000;
    std::uint64_t seed = 0;
    std::string crit = "student";
    std::string out = "table";
    std::string fgls = "iterated";
    std::string hist_out;
    unsigned threads = 1;
    std::optional<std::size_t> nw_lag;
    double alpha = 0.05;
    double intercept_y = 0.8;
    double intercept_x = 0.8;
    double level_break_y = 0.0;
    double level_break_x = 0.0;
};

CriticalMode parse_crit(const std::string& s) {
    if (s == "student") return CriticalMode::Student;
    if (s == "normal") return CriticalMode::Normal;
    throw UsageError("--crit must be student or normal");
}

FglsMethod parse_fgls(const std::string& s) {
    if (auto m = parse_fgls_method(s)) return *m;
    throw UsageError("--fgls must be iterated or two-step");
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
    if (a.table.empty() == a.config.empty()) throw UsageError("simulate needs exactly one of <table-id> or --config");
    if (a.out != "csv" && a.out != "table") throw UsageError("--out must be csv or table");

    TableOverrides o;
    TablePlan plan;
    bool from_config = false;
    if (!a.config.empty()) {
        ExperimentConfig cfg = load_experiment_config(a.config);
        plan = std::move(cfg.plan);
        o = cfg.overrides;
        from_config = true;
    }
    // Command-line values override the configuration document.
    if (!a.T.empty()) o.T_values = a.T;
    if (!from_config || a.reps != 2000) o.replications = a.reps;
    if (!from_config || a.seed != 0) o.seed = a.seed;
    if (!from_config || a.crit != "student") o.critical = parse_crit(a.crit);
    if (!from_config || a.alpha != 0.05) o.alpha = a.alpha;
    if (a.nw_lag) o.nw_lag = a.nw_lag;
    o.fgls_method = parse_fgls(a.fgls);
    o.threads = a.threads;
    o.intercept_y = a.intercept_y;
    o.intercept_x = a.intercept_x;
    o.level_break_y = a.level_break_y;
    o.level_break_x = a.level_break_x;
    if (o.replications < 1) throw UsageError("--reps must be >= 1");
    if (!(o.alpha > 0.0 && o.alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");

    McTable table;
    if (from_config) {
        plan.T_values = o.T_values;
        table = run_plan(plan, o);
    } else {
        const auto id = parse_table_id(a.table);
        if (!id) throw UsageError("unknown table id '" + a.table + "' (T3..T8, TB1, R2HIST)");
        if (!a.hist_out.empty()) {
            if (*id != TableId::R2Hist) throw UsageError("--hist-out is only meaningful for R2HIST");
            std::ofstream hist(a.hist_out);
            if (!hist) throw LoadError("cannot write " + a.hist_out);
            SpecifiedModelOptions so;
            so.replications = o.replications;
            so.seed = o.seed;
            so.alpha = o.alpha;
            so.critical = o.critical;
            so.fgls_method = o.fgls_method;
            so.threads = o.threads;
            so.T = o.T_values.empty() ? 100 : o.T_values.front();
            bool header = true;
            for (SpecifiedCase c : {SpecifiedCase::TsTs, SpecifiedCase::I1Ts}) {
                std::ostringstream buffer;
                write_study_csv(buffer, run_specified_model_study(c, 0.2, so));
                std::string text = buffer.str();
                if (!header) text.erase(0, text.find('\n') + 1);
                hist << text;
                header = false;
            }
        }
        table = run_table(*id, o);
    }
    if (a.out == "csv") {
        write_table_csv(out, table);
    } else {
        write_table_text(out, table);
    }
    return kExitOk;
}

// --------------------------------------------------------------------- fit

struct FitArgs {
    std::string data;
    std::string y;
    std::string x;
    int spec = 0;
    std::optional<std::size_t> nw_lag;
    std::vector<std::string> break_at;
    std::string break_kind = "slope";
    std::string estimator;
    std::string fgls = "iterated";
};

int run_fit(const FitArgs& a, std::ostream& out) {
    RegressionSpec spec;
    spec.number = a.spec;
    const BreakKind kind = a.break_kind == "level" ? BreakKind::Level : BreakKind::Slope;
    if (a.break_kind != "level" && a.break_kind != "slope") throw UsageError("--break-kind must be slope or level");
    for (const auto& b : a.break_at) spec.y_breaks.push_back({kind, parse_break_location(b), 1.0});
    if (spec.has_breaks() && spec.y_breaks.empty()) throw UsageError("regressions 4 and 5 need --break-at");
    spec.validate();

    FitOptions options;
    options.estimator = default_estimator(spec);
    if (a.estimator == "ols") {
        options.estimator = Estimator::Ols;
    } else if (a.estimator == "nw") {
        options.estimator = Estimator::NeweyWest;
    } else if (a.estimator == "fgls") {
        options.estimator = Estimator::Fgls;
    } else if (!a.estimator.empty()) {
        throw UsageError("--estimator must be ols, nw or fgls");
    }
    if (a.nw_lag && !a.estimator.empty() && options.estimator != Estimator::NeweyWest) {
        throw UsageError("--nw-lag requires the Newey-West estimator");
    }
    if (a.nw_lag) options.estimator = Estimator::NeweyWest;
    options.nw_lag = a.nw_lag;
    options.fgls_method = parse_fgls(a.fgls);

    const Dataset data = load_csv(a.data, a.y, a.x);
    RegressionBlock block;
    block.number = spec.number;
    block.estimator = options.estimator;
    block.fit = fit_regression(spec, data.column(a.x), data.column(a.y), options);
    block.diagnostics = diagnose(block.fit);
    write_fit_report(out, block, a.y, a.x);
    return kExitOk;
}

// -------------------------------------------------------------- limit-dist

struct LimitArgs {
    std::size_t reps = 100000;
    std::size_t steps = 10000;
    std::vector<double> probs = {0.005, 0.01, 0.025, 0.05, 0.1, 0.5, 0.9, 0.95, 0.975, 0.99, 0.995};
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

double normal_quantile(double p) {
    // Inverse normal CDF through the two-sided critical value helper.
    if (p == 0.5) return 0.0;
    const double tail = p < 0.5 ? p : 1.0 - p;
    const double z = critical_value(CriticalMode::Normal, 1, 2.0 * tail);
    return p < 0.5 ? -z : z;
}

int run_limit(const LimitArgs& a, std::ostream& out) {
    for (double p : a.probs) {
        if (!(p > 0.0 && p < 1.0)) throw UsageError("--probs values must lie in (0, 1)");
    }
    const auto q = limit_quantiles(a.reps, a.steps, a.probs, a.seed, a.threads);
    out << "prob,quantile,normal_quantile,difference\n";
    for (std::size_t i = 0; i < q.size(); ++i) {
        const double z = normal_quantile(a.probs[i]);
        out << format12(a.probs[i]) << ',' << format12(q[i]) << ',' << format12(z) << ',' << format12(q[i] - z)
            << '\n';
    }
    return kExitOk;
}

// -------------------------------------------------------------------- yule

struct YuleArgs {
    std::string data = "data/yule1926.csv";
    std::string y = kYuleMortality;
    std::string x = kYuleMarriages;
};

int run_yule(const YuleArgs& a, std::ostream& out) {
    const Dataset data = load_csv(a.data, a.y, a.x);
    write_yule_report(out, yule_study(data, a.y, a.x));
    return kExitOk;
}

// --------------------------------------------------------------------- gen

struct GenArgs {
    std::string which;
    std::size_t T = 100;
    std::uint64_t seed = 0;
    double mu_y = 0.8;
    double mu_x = 0.8;
    double beta_y = 0.2;
    double beta_x = 0.2;
    double phi_y = 0.0;
    double phi_x = 0.0;
    double beta1_y = 0.0;
    double beta1_x = 0.0;
    double mu1_y = 0.0;
    double mu1_x = 0.0;
    double sd_y = 1.0;
    double sd_x = 1.0;
    std::string break_y = "0.5";
    std::string break_x = "0.2";
};

DgpSpec ts_spec(double mu, double beta, double phi, double sd, double slope_brk, double level_brk,
                const BreakLocation& at, bool with_breaks) {
    DgpSpec s = DgpSpec::trend_stationary(mu, beta, phi, sd);
    if (with_breaks) {
        s.kind = ProcessKind::TrendStationaryBreak;
        if (slope_brk != 0.0) s.breaks.push_back(BreakSpec::slope_at(at, slope_brk));
        if (level_brk != 0.0) s.breaks.push_back(BreakSpec::level_at(at, level_brk));
    }
    return s;
}

DgpSpec i1_spec(double drift, double sd, double drift_brk, const BreakLocation& at, bool with_breaks) {
    DgpSpec s = DgpSpec::integrated(drift, sd);
    if (with_breaks) {
        s.kind = ProcessKind::IntegratedBreak;
        if (drift_brk != 0.0) s.breaks.push_back(BreakSpec::level_at(at, drift_brk));
    }
    return s;
}

int run_gen(const GenArgs& a, std::ostream& out) {
    if (a.which.size() != 2 || a.which[0] < '1' || a.which[0] > '3' || (a.which[1] != 'A' && a.which[1] != 'B')) {
        throw UsageError("--case must be one of 1A, 1B, 2A, 2B, 3A, 3B");
    }
    const int family = a.which[0] - '0';
    const bool breaks = a.which[1] == 'B';
    const BreakLocation at_y = parse_break_location(a.break_y);
    const BreakLocation at_x = parse_break_location(a.break_x);

    McCell cell;
    cell.T = a.T;
    cell.seed = a.seed;
    cell.dgp_y = family == 3 ? i1_spec(a.beta_y, a.sd_y, a.beta1_y, at_y, breaks)
                             : ts_spec(a.mu_y, a.beta_y, a.phi_y, a.sd_y, a.beta1_y, a.mu1_y, at_y, breaks);
    cell.dgp_x = family == 2 ? i1_spec(a.beta_x, a.sd_x, a.beta1_x, at_x, breaks)
                             : ts_spec(a.mu_x, a.beta_x, a.phi_x, a.sd_x, a.beta1_x, a.mu1_x, at_x, breaks);
    cell.dgp_y.validate();
    cell.dgp_x.validate();
    for (const auto& b : cell.dgp_y.breaks) resolve_break(b, a.T);
    for (const auto& b : cell.dgp_x.breaks) resolve_break(b, a.T);

    // Replication 1 of a Monte Carlo cell with the same seed sees exactly these series.
    const auto [y, x] = replication_data(cell, 1);
    out << "t,y,x\n";
    for (std::size_t t = 0; t < a.T; ++t) out << (t + 1) << ',' << format12(y[t]) << ',' << format12(x[t]) << '\n';
    return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spurious-regression simulations, fits and the Yule (1926) study", "spurreg"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "spurreg 1.0.0");

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo rejection rates for a built-in table or a config grid");
    simulate->add_option("table", sim.table, "Table id: T3, T4, T5, T6, T7, T8, TB1, R2HIST");
    simulate->add_option("--config", sim.config, "YAML grid definition (see configs/)");
    simulate->add_option("--T", sim.T, "Sample sizes (repeatable)");
    simulate->add_option("--reps", sim.reps, "Replications per cell");
    simulate->add_option("--seed", sim.seed, "Master seed");
    simulate->add_option("--crit", sim.crit, "Critical values: student or normal");
    simulate->add_option("--alpha", sim.alpha, "Nominal size");
    simulate->add_option("--out", sim.out, "Output format: csv or table");
    simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores)");
    simulate->add_option("--nw-lag", sim.nw_lag, "Newey-West truncation lag");
    simulate->add_option("--fgls", sim.fgls, "FGLS method: iterated or two-step");
    simulate->add_option("--intercept-y", sim.intercept_y, "mu_y");
    simulate->add_option("--intercept-x", sim.intercept_x, "mu_x");
    simulate->add_option("--level-break-y", sim.level_break_y, "Level-break magnitude of y in the break tables");
    simulate->add_option("--level-break-x", sim.level_break_x, "Level-break magnitude of x in the break tables");
    simulate->add_option("--hist-out", sim.hist_out, "R2HIST only: per-replication CSV of gamma_hat and t");

    FitArgs fit;
    auto* fitcmd = app.add_subcommand("fit", "Fit one regression specification to a CSV dataset");
    fitcmd->add_option("--data", fit.data, "CSV file with a header row")->required();
    fitcmd->add_option("--y", fit.y, "Dependent-variable column")->required();
    fitcmd->add_option("--x", fit.x, "Regressor column")->required();
    fitcmd->add_option("--spec", fit.spec, "Regression 1..5")->required()->check(CLI::Range(1, 5));
    fitcmd->add_option("--nw-lag", fit.nw_lag, "Use Newey-West standard errors with this lag");
    fitcmd->add_option("--estimator", fit.estimator, "ols, nw or fgls (default: by specification)");
    fitcmd->add_option("--fgls", fit.fgls, "FGLS method: iterated or two-step");
    fitcmd->add_option("--break-at", fit.break_at, "Break date of y: fraction (0.5) or index (23); repeatable");
    fitcmd->add_option("--break-kind", fit.break_kind, "Break regressor: slope (DT) or level (DU)");

    LimitArgs lim;
    auto* limit = app.add_subcommand("limit-dist", "Quantiles of the limiting t-statistic for TS on I(1)");
    limit->add_option("--reps", lim.reps, "Number of draws (>= 1000)");
    limit->add_option("--steps", lim.steps, "Grid points per Wiener path (>= 100)");
    limit->add_option("--probs", lim.probs, "Probabilities, comma separated")->delimiter(',');
    limit->add_option("--seed", lim.seed, "Master seed");
    limit->add_option("--threads", lim.threads, "Worker threads (0 = all cores)");

    YuleArgs yule;
    auto* yulecmd = app.add_subcommand("yule", "Regressions 1-3 on the Yule (1926) mortality/marriage data");
    yulecmd->add_option("--data", yule.data, "CSV with year, mortality and marriages columns");
    yulecmd->add_option("--y", yule.y, "Dependent-variable column");
    yulecmd->add_option("--x", yule.x, "Regressor column");

    GenArgs gen;
    auto* gencmd = app.add_subcommand("gen", "Simulate one (y, x) pair and print it as CSV");
    gencmd->add_option("--case", gen.which, "1A, 1B, 2A, 2B, 3A or 3B")->required();
    gencmd->add_option("--T", gen.T, "Sample size");
    gencmd->add_option("--seed", gen.seed, "Master seed");
    gencmd->add_option("--mu-y", gen.mu_y, "Intercept of y (TS)");
    gencmd->add_option("--mu-x", gen.mu_x, "Intercept of x (TS)");
    gencmd->add_option("--beta-y", gen.beta_y, "Trend slope or drift of y");
    gencmd->add_option("--beta-x", gen.beta_x, "Trend slope or drift of x");
    gencmd->add_option("--phi-y", gen.phi_y, "AR coefficient of y (TS)");
    gencmd->add_option("--phi-x", gen.phi_x, "AR coefficient of x (TS)");
    gencmd->add_option("--beta1-y", gen.beta1_y, "Slope (TS) or drift (I(1)) break of y");
    gencmd->add_option("--beta1-x", gen.beta1_x, "Slope (TS) or drift (I(1)) break of x");
    gencmd->add_option("--mu1-y", gen.mu1_y, "Level break of y (TS)");
    gencmd->add_option("--mu1-x", gen.mu1_x, "Level break of x (TS)");
    gencmd->add_option("--sd-y", gen.sd_y, "Innovation standard deviation of y");
    gencmd->add_option("--sd-x", gen.sd_x, "Innovation standard deviation of x");
    gencmd->add_option("--break-y", gen.break_y, "Break date of y: fraction or index");
    gencmd->add_option("--break-x", gen.break_x, "Break date of x: fraction or index");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        if (e.get_exit_code() != 0 && err.rdbuf() != nullptr) err << app.help();
        return kExitUsage;
    }

    try {
        if (*simulate) return run_simulate(sim, out);
        if (*fitcmd) return run_fit(fit, out);
        if (*limit) return run_limit(lim, out);
        if (*yulecmd) return run_yule(yule, out);
        if (*gencmd) return run_gen(gen, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    err << app.help();
    return kExitUsage;
}

int cli_dispatch(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    return cli_dispatch(args, std::cout, std::cerr);
}

}  // namespace spurious
