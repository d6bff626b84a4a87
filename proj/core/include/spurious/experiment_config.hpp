#pragma once

#include <filesystem>
#include <string>

#include "spurious/montecarlo.hpp"

namespace spurious {

/// A custom Monte Carlo grid read from a YAML document.
///
/// Layout (see configs/custom_grid.yaml for a worked example):
///
///   title: "..."                 # optional
///   T: [50, 100]                 # required
///   replications: 2000           # optional, default 2000
///   seed: 0                      # optional
///   alpha: 0.05                  # optional
///   critical: student | normal   # optional
///   nw_lag: 4                    # optional, default rule otherwise
///   fgls: iterated | two-step    # optional, default iterated
///   columns:                     # required, applied to every row
///     - {label: "Reg 3", regression: 3, estimator: fgls,
///        y_breaks: [{kind: slope, at: 0.5}]}
///   rows:                        # required
///     - params: {phi_y: 0.9}     # optional labels echoed in the output
///       y: {process: TS, intercept: 0.8, trend: 0.2, ar: 0.9, sd: 1.0,
///           breaks: [{kind: slope, at: 0.5, magnitude: 0.2}]}
///       x: {process: I1, drift: 0.2}
///
/// `process` is one of TS, TS_BREAK, I1, I1_BREAK. A break location written
/// with a decimal point is a fraction of T, otherwise an observation index.
/// `estimator` defaults to OLS, or FGLS for regressions 3 and 5.
struct ExperimentConfig {
    TablePlan plan;
    TableOverrides overrides;
};

ExperimentConfig parse_experiment_config(const std::string& text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

}  // namespace spurious
