#include <gtest/gtest.h>

#include <cmath>

#include "climpanel/localproj.hpp"
#include "climpanel/simulate.hpp"

using namespace climpanel;

namespace {

PanelDataset constant_growth_panel(double g, int regions = 2, int quarters = 30) {
    Matrix p(regions, quarters), s = Matrix::Random(regions, quarters);
    for (int r = 0; r < regions; ++r)
        for (int t = 0; t < quarters; ++t) p(r, t) = 100.0 * std::pow(1.0 + g, t);
    return PanelDataset(sim::region_names(regions), {2002, 1}, static_cast<std::size_t>(quarters))
        .with_series("cpi", p)
        .with_series("shock", s);
}

LPSpec default_spec() {
    LPSpec spec;
    spec.outcome = "cpi";
    spec.shock = "shock";
    return spec;
}

}  // namespace

TEST(LpDesign, HorizonZeroOutcomeIsLogGrowth) {
    auto rng = sim::make_rng(1);
    auto ds = sim::simulate_lp({}, rng);
    auto spec = default_spec();
    spec.lags = 0;
    spec.fixed_effects = FixedEffects::None;
    auto d = build_lp_design(ds, spec, 0);
    Matrix growth = first_difference(log_levels(ds, "cpi"));
    ASSERT_EQ(d.nobs(), 7 * 87);
    for (Eigen::Index i = 0; i < d.nobs(); ++i)
        EXPECT_DOUBLE_EQ(d.y_raw(i), growth(d.region[static_cast<std::size_t>(i)], d.period[static_cast<std::size_t>(i)]));
}

TEST(LpDesign, ConstantGrowthOutcome) {
    const double g = 0.015;
    auto ds = constant_growth_panel(g);
    auto spec = default_spec();
    for (int h : {0, 1, 4, 8}) {
        auto d = build_lp_design(ds, spec, h);
        for (Eigen::Index i = 0; i < d.nobs(); ++i) EXPECT_NEAR(d.y_raw(i), (h + 1) * std::log1p(g), 1e-12);
    }
}

TEST(LpDesign, NoLagsNoEffectsIsBivariate) {
    auto ds = constant_growth_panel(0.01);
    auto spec = default_spec();
    spec.lags = 0;
    spec.fixed_effects = FixedEffects::None;
    auto d = build_lp_design(ds, spec, 2);
    EXPECT_EQ(d.k(), 2);
    EXPECT_EQ(d.names, (std::vector<std::string>{"(intercept)", "shock"}));
}

TEST(LpDesign, WindowBoundsLeadsAndLags) {
    auto rng = sim::make_rng(2);
    sim::LpDgp g;
    g.quarters = 100;
    g.start = {1999, 1};
    auto ds = sim::simulate_lp(g, rng);
    auto spec = default_spec();
    spec.sample = QuarterRange::parse("2002Q1:2023Q4");
    for (int h = 0; h <= 8; ++h) {
        auto d = build_lp_design(ds, spec, h);
        EXPECT_EQ(d.nobs(), 7 * (88 - spec.lags - 1 - h)) << h;
    }
}

TEST(LpDesign, TooShortPanelIsSampleError) {
    auto ds = constant_growth_panel(0.01, 1, 12);
    auto spec = default_spec();
    EXPECT_THROW(build_lp_design(ds, spec, 4), SampleError);
}

TEST(LpEstimate, ZeroVarianceShockRecordedPerHorizon) {
    auto rng = sim::make_rng(3);
    auto ds = sim::simulate_lp({}, rng);
    ds = ds.with_series("flat", Matrix::Constant(7, 88, 0.25));
    auto spec = default_spec();
    spec.shock = "flat";
    auto irf = estimate_irf(ds, spec);
    EXPECT_TRUE(irf.responses.empty());
    ASSERT_EQ(irf.failures.size(), 9u);
    for (const auto& f : irf.failures) EXPECT_NE(f.error.find("'flat'"), std::string::npos) << f.error;
}

TEST(LpEstimate, UnknownVariablesAndBadLevelsPropagate) {
    auto rng = sim::make_rng(4);
    auto ds = sim::simulate_lp({}, rng);
    auto spec = default_spec();
    spec.shock = "nope";
    EXPECT_THROW(estimate_irf(ds, spec), LookupError);
    Matrix bad = ds.series("cpi");
    bad(2, 10) = -1.0;
    spec = default_spec();
    EXPECT_THROW(estimate_irf(ds.with_series("cpi", bad), spec), DomainError);
}

TEST(LpEstimate, HorizonZeroMatchesDirectRegression) {
    auto rng = sim::make_rng(5);
    auto ds = sim::simulate_lp({}, rng);
    auto spec = default_spec();
    auto ir = estimate_horizon(ds, spec, 0);

    Matrix growth = first_difference(log_levels(ds, "cpi"));
    std::vector<Matrix> lags;
    std::vector<std::string> names{"shock"};
    for (int n = 1; n <= 8; ++n) {
        lags.push_back(lagged(growth, n));
        names.push_back("L" + std::to_string(n));
    }
    std::vector<const Matrix*> cols{&ds.series("shock")};
    for (const auto& l : lags) cols.push_back(&l);
    auto fit = ols(stack_design("dlog", growth, names, cols, FixedEffects::Both, true));
    EXPECT_NEAR(ir.estimate, fit.coef(0), 1e-12);
    EXPECT_EQ(ir.nobs, fit.nobs);
}

TEST(LpEstimate, ObservationsShrinkWithHorizon) {
    auto rng = sim::make_rng(6);
    auto irf = estimate_irf(sim::simulate_lp({}, rng), default_spec());
    ASSERT_EQ(irf.responses.size(), 9u);
    for (std::size_t i = 1; i < irf.responses.size(); ++i) EXPECT_LT(irf.responses[i].nobs, irf.responses[i - 1].nobs);
}

TEST(LpEstimate, BandwidthCoversHorizon) {
    auto rng = sim::make_rng(7);
    auto irf = estimate_irf(sim::simulate_lp({}, rng), default_spec());
    for (const auto& r : irf.responses) {
        EXPECT_GE(r.bandwidth, r.horizon);
        EXPECT_GE(r.bandwidth, default_bandwidth(88 - 9 - r.horizon));
        EXPECT_NEAR(r.band.hi - r.estimate, critical_value(0.90) * r.se, 1e-15);
    }
}

TEST(LpEstimate, ShiftAndScaleOfShock) {
    auto rng = sim::make_rng(8);
    auto ds = sim::simulate_lp({}, rng);
    const double c = 3.5;
    Matrix shifted = ds.series("shock").array() + 7.0;
    Matrix scaled = ds.series("shock") * c;
    auto spec = default_spec();
    auto base = estimate_irf(ds, spec);
    spec.shock = "shifted";
    auto moved = estimate_irf(ds.with_series("shifted", shifted), spec);
    spec.shock = "scaled";
    auto stretched = estimate_irf(ds.with_series("scaled", scaled), spec);
    for (std::size_t i = 0; i < base.responses.size(); ++i) {
        const auto& b = base.responses[i];
        EXPECT_NEAR(moved.responses[i].estimate, b.estimate, 1e-9 * (1.0 + std::abs(b.estimate)));
        EXPECT_NEAR(moved.responses[i].se, b.se, 1e-9 * b.se);
        EXPECT_NEAR(stretched.responses[i].estimate, b.estimate / c, 1e-10 * std::abs(b.estimate / c) + 1e-14);
        EXPECT_NEAR(stretched.responses[i].se, b.se / c, 1e-10 * b.se / c);
        EXPECT_EQ(stretched.responses[i].stars, b.stars);
    }
}

TEST(LpEstimate, ModestMonteCarloRecovery) {
    sim::LpDgp g;
    const int reps = 60;
    std::vector<double> sum(9, 0.0);
    for (int rep = 0; rep < reps; ++rep) {
        auto rng = sim::make_rng(99, static_cast<std::uint64_t>(rep));
        auto irf = estimate_irf(sim::simulate_lp(g, rng), default_spec());
        for (const auto& r : irf.responses) sum[static_cast<std::size_t>(r.horizon)] += r.estimate / reps;
    }
    for (int h = 0; h <= 8; ++h) EXPECT_NEAR(sum[static_cast<std::size_t>(h)], g.beta, 0.1) << h;
}

TEST(LpTable, EmptyResultGivesNoRows) {
    IrfResult empty{"s", "o", {}, {}};
    EXPECT_TRUE(irf_table(empty).empty());
    auto rng = sim::make_rng(9);
    auto rows = irf_table(estimate_irf(sim::simulate_lp({}, rng), default_spec()));
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_EQ(rows[3].horizon, 3);
    EXPECT_EQ(rows[3].shock, "shock");
}

TEST(LpSpecValidation, RejectsBadInput) {
    auto spec = default_spec();
    spec.lags = -1;
    EXPECT_THROW(validate(spec), ConfigError);
    spec = default_spec();
    spec.horizons = {0, -2};
    EXPECT_THROW(validate(spec), ConfigError);
    spec = default_spec();
    spec.level = 1.0;
    EXPECT_THROW(validate(spec), ConfigError);
}
