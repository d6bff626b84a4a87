#include "spurious/dgp.hpp"

#include <cmath>
#include <string>

#include "spurious/errors.hpp"

namespace spurious {

void check_series(std::span<const double> values, const char* what) {
    if (values.size() < 2) {
        throw ParameterError(std::string(what) + ": length must be at least 2");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw ParameterError(std::string(what) + ": non-finite value at t=" + std::to_string(i + 1));
        }
    }
}

std::size_t resolve_break(const BreakSpec& brk, std::size_t T) {
    std::size_t index = 0;
    if (const auto* fixed = std::get_if<std::size_t>(&brk.location)) {
        index = *fixed;
    } else {
        const double fraction = std::get<double>(brk.location);
        if (!(fraction > 0.0 && fraction < 1.0)) {
            throw ParameterError("break fraction must lie in (0, 1), got " + std::to_string(fraction));
        }
        index = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(T)));
    }
    if (index < 1 || index >= T) {
        throw ParameterError("break location " + std::to_string(index) + " outside [1, T) for T=" +
                             std::to_string(T));
    }
    return index;
}

double break_dummy(BreakKind kind, std::size_t break_index, std::size_t t) noexcept {
    if (t <= break_index) return 0.0;
    return kind == BreakKind::Level ? 1.0 : static_cast<double>(t - break_index);
}

bool is_integrated(ProcessKind kind) noexcept {
    return kind == ProcessKind::Integrated || kind == ProcessKind::IntegratedBreak;
}

bool allows_breaks(ProcessKind kind) noexcept {
    return kind == ProcessKind::TrendStationaryBreak || kind == ProcessKind::IntegratedBreak;
}

std::string to_string(ProcessKind kind) {
    switch (kind) {
        case ProcessKind::TrendStationary: return "TS";
        case ProcessKind::TrendStationaryBreak: return "TS+br";
        case ProcessKind::Integrated: return "I1";
        case ProcessKind::IntegratedBreak: return "I1+br";
    }
    return "?";
}

void DgpSpec::validate() const {
    if (!std::isfinite(intercept) || !std::isfinite(trend) || !std::isfinite(ar)) {
        throw ParameterError("DgpSpec: parameters must be finite");
    }
    // sigma = 0 is accepted as the noiseless limit.
    if (!std::isfinite(innovation_sd) || innovation_sd < 0.0) {
        throw ParameterError("DgpSpec: innovation_sd must be >= 0");
    }
    if (!is_integrated(kind) && !(std::abs(ar) < 1.0)) {
        throw ParameterError("DgpSpec: |phi| < 1 required for trend-stationary processes");
    }
    if (!allows_breaks(kind) && !breaks.empty()) {
        throw ParameterError("DgpSpec: breaks given for a process kind without breaks (" + to_string(kind) +
                             ")");
    }
    for (const auto& brk : breaks) {
        if (!std::isfinite(brk.magnitude)) {
            throw ParameterError("DgpSpec: break magnitude must be finite");
        }
        if (is_integrated(kind) && brk.kind != BreakKind::Level) {
            throw ParameterError("DgpSpec: integrated processes carry only level (drift) breaks");
        }
    }
}

DgpSpec DgpSpec::trend_stationary(double intercept, double trend, double ar, double sd) {
    DgpSpec spec;
    spec.kind = ProcessKind::TrendStationary;
    spec.intercept = intercept;
    spec.trend = trend;
    spec.ar = ar;
    spec.innovation_sd = sd;
    return spec;
}

DgpSpec DgpSpec::integrated(double drift, double sd) {
    DgpSpec spec;
    spec.kind = ProcessKind::Integrated;
    spec.trend = drift;
    spec.innovation_sd = sd;
    return spec;
}

namespace {

struct ResolvedBreak {
    BreakKind kind;
    std::size_t index;
    double magnitude;
};

std::vector<ResolvedBreak> resolve_all(const DgpSpec& spec, std::size_t T) {
    std::vector<ResolvedBreak> out;
    out.reserve(spec.breaks.size());
    for (const auto& brk : spec.breaks) {
        out.push_back({brk.kind, resolve_break(brk, T), brk.magnitude});
    }
    return out;
}

void check_request(const DgpSpec& spec, std::size_t T) {
    if (T < 2) throw ParameterError("generate: T must be at least 2");
    spec.validate();
}

}  // namespace

Series deterministic_component(const DgpSpec& spec, std::size_t T) {
    check_request(spec, T);
    const auto breaks = resolve_all(spec, T);
    Series out(T);
    for (std::size_t t = 1; t <= T; ++t) {
        const double td = static_cast<double>(t);
        double value = 0.0;
        if (is_integrated(spec.kind)) {
            // Accumulated drift: beta t + sum_i m_i (t - T_b) 1(t > T_b).
            value = spec.trend * td;
            for (const auto& b : breaks) value += b.magnitude * break_dummy(BreakKind::Slope, b.index, t);
        } else {
            value = spec.intercept + spec.trend * td;
            for (const auto& b : breaks) value += b.magnitude * break_dummy(b.kind, b.index, t);
        }
        out[t - 1] = value;
    }
    return out;
}

Series generate(const DgpSpec& spec, std::size_t T, RngStream& rng) {
    check_request(spec, T);
    const auto breaks = resolve_all(spec, T);
    const double sd = spec.innovation_sd;
    Series out(T);

    if (is_integrated(spec.kind)) {
        double level = 0.0;
        for (std::size_t t = 1; t <= T; ++t) {
            double drift = spec.trend;
            for (const auto& b : breaks) drift += b.magnitude * break_dummy(BreakKind::Level, b.index, t);
            level += drift + sd * rng.standard_normal();
            out[t - 1] = level;
        }
        return out;
    }

    const double phi = spec.ar;
    double u = sd / std::sqrt(1.0 - phi * phi) * rng.standard_normal();
    for (std::size_t t = 1; t <= T; ++t) {
        u = phi * u + sd * rng.standard_normal();
        double value = spec.intercept + spec.trend * static_cast<double>(t);
        for (const auto& b : breaks) value += b.magnitude * break_dummy(b.kind, b.index, t);
        out[t - 1] = value + u;
    }
    return out;
}

}  // namespace spurious
