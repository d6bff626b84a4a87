#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "spurious/dgp.hpp"
#include "spurious/errors.hpp"

namespace spurious {
namespace {

TEST(Generate, NoiselessTrendIsExact) {
    RngStream rng(0, 0);
    const Series y = generate(DgpSpec::trend_stationary(0.8, 0.2, 0.0, 0.0), 5, rng);
    const Series expected = {1.0, 1.2, 1.4, 1.6, 1.8};
    ASSERT_EQ(y.size(), expected.size());
    for (std::size_t t = 0; t < y.size(); ++t) EXPECT_DOUBLE_EQ(y[t], expected[t]) << "t=" << t + 1;
}

TEST(Generate, NoiselessSlopeBreak) {
    DgpSpec spec = DgpSpec::trend_stationary(0.0, 0.0, 0.0, 0.0);
    spec.kind = ProcessKind::TrendStationaryBreak;
    spec.breaks = {BreakSpec::slope_at(std::size_t{2}, 0.1)};
    RngStream rng(0, 0);
    const Series y = generate(spec, 5, rng);
    const Series expected = {0.0, 0.0, 0.1, 0.2, 0.3};
    for (std::size_t t = 0; t < y.size(); ++t) EXPECT_NEAR(y[t], expected[t], 1e-15) << "t=" << t + 1;
}

TEST(Generate, NoiselessLevelBreak) {
    DgpSpec spec = DgpSpec::trend_stationary(1.0, 0.0, 0.5, 0.0);
    spec.kind = ProcessKind::TrendStationaryBreak;
    spec.breaks = {BreakSpec::level_at(0.5, 2.0)};
    RngStream rng(0, 0);
    const Series y = generate(spec, 6, rng);
    EXPECT_EQ(y, (Series{1, 1, 1, 3, 3, 3}));
}

TEST(Generate, NoiselessRandomWalkWithDriftBreak) {
    DgpSpec spec = DgpSpec::integrated(0.5, 0.0);
    spec.kind = ProcessKind::IntegratedBreak;
    spec.breaks = {BreakSpec::level_at(std::size_t{2}, 1.0)};
    RngStream rng(0, 0);
    const Series x = generate(spec, 4, rng);
    // Drift 0.5 throughout, 1.5 after t = 2.
    EXPECT_EQ(x, (Series{0.5, 1.0, 2.5, 4.0}));
    EXPECT_EQ(x, deterministic_component(spec, 4));
}

TEST(Generate, RandomWalkIncrementsHaveUnitVariance) {
    RngStream rng(5, 1);
    const Series x = generate(DgpSpec::integrated(0.0, 1.0), 10000, rng);
    double mean = 0.0;
    for (std::size_t t = 1; t < x.size(); ++t) mean += x[t] - x[t - 1];
    mean /= static_cast<double>(x.size() - 1);
    double var = 0.0;
    for (std::size_t t = 1; t < x.size(); ++t) var += std::pow(x[t] - x[t - 1] - mean, 2);
    var /= static_cast<double>(x.size() - 2);
    EXPECT_NEAR(var, 1.0, 0.05);
}

TEST(Generate, StationaryStartHasTheStationaryVariance) {
    // u_1 = phi u_0 + e_1 with u_0 drawn from the stationary law: Var(u_1) = 1 / (1 - phi^2).
    const double phi = 0.9;
    constexpr int reps = 20000;
    double sum2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        RngStream rng(8, static_cast<std::uint64_t>(r));
        sum2 += std::pow(generate(DgpSpec::trend_stationary(0, 0, phi), 2, rng)[0], 2);
    }
    const double target = 1.0 / (1.0 - phi * phi);
    EXPECT_NEAR(sum2 / reps, target, 4.0 * target * std::sqrt(2.0 / reps));
}

TEST(Generate, Ar1SampleAutocorrelation) {
    RngStream rng(2, 2);
    const Series u = generate(DgpSpec::trend_stationary(0, 0, 0.7), 20000, rng);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t t = 1; t < u.size(); ++t) {
        num += u[t] * u[t - 1];
        den += u[t - 1] * u[t - 1];
    }
    EXPECT_NEAR(num / den, 0.7, 0.02);
}

TEST(Generate, SameStreamIsBitIdentical) {
    const DgpSpec spec = DgpSpec::trend_stationary(0.8, 0.2, 0.9);
    RngStream a(3, 4);
    RngStream b(3, 4);
    const Series x = generate(spec, 200, a);
    const Series y = generate(spec, 200, b);
    EXPECT_EQ(std::memcmp(x.data(), y.data(), x.size() * sizeof(double)), 0);
}

TEST(Generate, NoiseIsIndependentOfTheDeterministicPart) {
    // Same stream, different intercept and trend: the difference is exactly deterministic.
    RngStream a(3, 4);
    RngStream b(3, 4);
    const Series x = generate(DgpSpec::trend_stationary(0.0, 0.0, 0.5), 50, a);
    const Series y = generate(DgpSpec::trend_stationary(2.0, 0.3, 0.5), 50, b);
    for (std::size_t t = 0; t < x.size(); ++t) {
        EXPECT_NEAR(y[t] - x[t], 2.0 + 0.3 * static_cast<double>(t + 1), 1e-12);
    }
}

TEST(Breaks, ResolveFractionAndIndex) {
    EXPECT_EQ(resolve_break(BreakSpec::slope_at(0.5, 1.0), 100), 50u);
    EXPECT_EQ(resolve_break(BreakSpec::slope_at(0.2, 1.0), 50), 10u);
    EXPECT_EQ(resolve_break(BreakSpec::slope_at(std::size_t{7}, 1.0), 10), 7u);
    EXPECT_THROW(resolve_break(BreakSpec::slope_at(std::size_t{10}, 1.0), 10), ParameterError);
    EXPECT_THROW(resolve_break(BreakSpec::slope_at(std::size_t{0}, 1.0), 10), ParameterError);
    EXPECT_THROW(resolve_break(BreakSpec::slope_at(1.0, 1.0), 10), ParameterError);
    EXPECT_THROW(resolve_break(BreakSpec::slope_at(0.01, 1.0), 10), ParameterError);
}

TEST(Breaks, DummyDefinitions) {
    EXPECT_EQ(break_dummy(BreakKind::Level, 3, 3), 0.0);
    EXPECT_EQ(break_dummy(BreakKind::Level, 3, 4), 1.0);
    EXPECT_EQ(break_dummy(BreakKind::Slope, 3, 3), 0.0);
    EXPECT_EQ(break_dummy(BreakKind::Slope, 3, 6), 3.0);
}

TEST(DgpSpec, RejectsInvalidParameters) {
    EXPECT_THROW(DgpSpec::trend_stationary(0, 0, 1.0).validate(), ParameterError);
    EXPECT_THROW(DgpSpec::trend_stationary(0, 0, -1.2).validate(), ParameterError);
    EXPECT_THROW(DgpSpec::trend_stationary(0, 0, 0.5, -1.0).validate(), ParameterError);
    EXPECT_THROW(DgpSpec::trend_stationary(NAN, 0, 0.5).validate(), ParameterError);

    DgpSpec no_breaks_allowed = DgpSpec::trend_stationary(0, 0, 0);
    no_breaks_allowed.breaks = {BreakSpec::slope_at(0.5, 1.0)};
    EXPECT_THROW(no_breaks_allowed.validate(), ParameterError);

    DgpSpec walk = DgpSpec::integrated(0.2);
    walk.kind = ProcessKind::IntegratedBreak;
    walk.breaks = {BreakSpec::slope_at(0.5, 1.0)};
    EXPECT_THROW(walk.validate(), ParameterError);

    // A random walk ignores the AR field.
    DgpSpec walk_with_ar = DgpSpec::integrated(0.0);
    walk_with_ar.ar = 5.0;
    EXPECT_NO_THROW(walk_with_ar.validate());
}

TEST(Generate, RejectsShortSamples) {
    RngStream rng(0, 0);
    EXPECT_THROW(generate(DgpSpec::trend_stationary(0, 0, 0), 1, rng), ParameterError);
}

TEST(CheckSeries, NamesTheBadObservation) {
    try {
        check_series(Series{1.0, NAN, 2.0}, "y");
        FAIL() << "expected ParameterError";
    } catch (const ParameterError& e) {
        EXPECT_STREQ(e.what(), "y: non-finite value at t=2");
    }
    EXPECT_THROW(check_series(Series{1.0}), ParameterError);
}

}  // namespace
}  // namespace spurious
