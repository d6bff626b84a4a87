#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spurious/rng.hpp"

namespace spurious {

/// Ordered real observations y_1..y_T (index 0 holds t = 1).
using Series = std::vector<double>;

/// Throws ParameterError unless the series has length >= 2 and only finite values.
void check_series(std::span<const double> values, const char* what = "series");

enum class BreakKind {
    Level,  ///< DU_t = 1(t > T_b)
    Slope,  ///< DT_t = (t - T_b) 1(t > T_b)
};

/// A break date given either as an observation index or as a fraction of T
/// (floor(fraction * T) at resolution time).
using BreakLocation = std::variant<std::size_t, double>;

struct BreakSpec {
    BreakKind kind = BreakKind::Slope;
    BreakLocation location = std::size_t{1};
    double magnitude = 0.0;

    static BreakSpec level_at(BreakLocation where, double magnitude) {
        return {BreakKind::Level, where, magnitude};
    }
    static BreakSpec slope_at(BreakLocation where, double magnitude) {
        return {BreakKind::Slope, where, magnitude};
    }
};

/// Resolve a break date for sample size T. Throws ParameterError unless 1 <= T_b < T.
std::size_t resolve_break(const BreakSpec& brk, std::size_t T);

/// Value of the break dummy (DU or DT, unscaled) at time t (1-based).
double break_dummy(BreakKind kind, std::size_t break_index, std::size_t t) noexcept;

enum class ProcessKind {
    TrendStationary,       ///< TS
    TrendStationaryBreak,  ///< TS + br
    Integrated,            ///< I(1), trend field is the drift
    IntegratedBreak,       ///< I(1) + br, level breaks shift the drift
};

bool is_integrated(ProcessKind kind) noexcept;
bool allows_breaks(ProcessKind kind) noexcept;
std::string to_string(ProcessKind kind);

/// Full description of one generating process.
///
/// TS:   y_t = mu + sum_i m_i DU_it + beta t + sum_j b_j DT_jt + u_t,
///       u_t = phi u_{t-1} + sigma e_t, u_0 ~ N(0, sigma^2 / (1 - phi^2)).
/// I(1): x_t = beta + sum_i m_i DU_it + x_{t-1} + sigma e_t, x_0 = 0.
struct DgpSpec {
    ProcessKind kind = ProcessKind::TrendStationary;
    double intercept = 0.0;
    double trend = 0.0;  ///< beta, or the drift for I(1) processes
    double ar = 0.0;     ///< phi, TS only
    double innovation_sd = 1.0;
    std::vector<BreakSpec> breaks;

    /// Throws ParameterError naming the first violated invariant.
    void validate() const;

    static DgpSpec trend_stationary(double intercept, double trend, double ar, double sd = 1.0);
    static DgpSpec integrated(double drift, double sd = 1.0);
};

/// Simulate T observations. Consumes draws from `rng`; pure otherwise.
Series generate(const DgpSpec& spec, std::size_t T, RngStream& rng);

/// The noiseless component (intercept, trend, breaks) at t = 1..T.
Series deterministic_component(const DgpSpec& spec, std::size_t T);

}  // namespace spurious
