#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

#include "climpanel/regress.hpp"
#include "oracles.hpp"

using namespace climpanel;

namespace {

struct RandomPanel {
    Matrix y;
    std::vector<Matrix> xs;
    std::vector<std::string> names;
};

/// y = sum b_k x_k + a_r + d_t + e with optional missing cells.
RandomPanel random_panel(std::mt19937_64& rng, int regions, int periods, int k, double missing_rate = 0.0) {
    std::normal_distribution<double> z(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RandomPanel p;
    p.y = Matrix(regions, periods);
    std::vector<double> a(static_cast<std::size_t>(regions)), d(static_cast<std::size_t>(periods));
    for (auto& v : a) v = 3.0 * z(rng);
    for (auto& v : d) v = 2.0 * z(rng);
    for (int j = 0; j < k; ++j) {
        Matrix x(regions, periods);
        for (int r = 0; r < regions; ++r)
            for (int t = 0; t < periods; ++t) x(r, t) = z(rng) + 0.5 * a[static_cast<std::size_t>(r)] + 0.3 * d[static_cast<std::size_t>(t)];
        p.xs.push_back(x);
        p.names.push_back("x" + std::to_string(j));
    }
    for (int r = 0; r < regions; ++r) {
        for (int t = 0; t < periods; ++t) {
            double v = a[static_cast<std::size_t>(r)] + d[static_cast<std::size_t>(t)] + z(rng);
            for (int j = 0; j < k; ++j) v += (j + 1) * 0.5 * p.xs[static_cast<std::size_t>(j)](r, t);
            p.y(r, t) = u(rng) < missing_rate ? kMissing : v;
        }
    }
    return p;
}

Design to_design(const RandomPanel& p, FixedEffects fe, bool intercept = true) {
    std::vector<const Matrix*> cols;
    for (const auto& x : p.xs) cols.push_back(&x);
    return stack_design("y", p.y, p.names, cols, fe, intercept);
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    return es.eigenvalues().minCoeff();
}

}  // namespace

TEST(WithinTransform, RegionConstantRegressorVanishes) {
    Matrix y = Matrix::Random(4, 10), c(4, 10);
    for (int r = 0; r < 4; ++r) c.row(r).setConstant(r * 3.0 + 1.0);
    auto d = within_transform(stack_design("y", y, {"c"}, {&c}, FixedEffects::Region, true));
    EXPECT_LT(d.X.cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(d.absorbed, 4);
}

TEST(WithinTransform, SingleRegionWithTimeEffects) {
    Matrix y = Matrix::Random(1, 12), x = Matrix::Random(1, 12);
    auto raw = stack_design("y", y, {"x"}, {&x}, FixedEffects::Time, true);
    auto kept = within_transform(raw, false);
    EXPECT_EQ(kept.nobs(), 12);
    EXPECT_TRUE((kept.X.array() == 0.0).all());
    EXPECT_FALSE(kept.warnings.empty());
    auto dropped = within_transform(raw);
    EXPECT_EQ(dropped.nobs(), 0);
    EXPECT_EQ(dropped.warnings.size(), 12u);
}

TEST(WithinTransform, TwoWayMeansVanish) {
    std::mt19937_64 rng(5);
    for (double missing : {0.0, 0.15}) {
        auto p = random_panel(rng, 6, 30, 2, missing);
        auto d = within_transform(to_design(p, FixedEffects::Both));
        Eigen::MatrixXd m(d.nobs(), 3);
        m << d.y, d.X;
        for (int dim = 0; dim < 2; ++dim) {
            const auto& g = dim == 0 ? d.region : d.period;
            std::map<int, Eigen::RowVectorXd> sums;
            std::map<int, int> counts;
            for (Eigen::Index i = 0; i < d.nobs(); ++i) {
                auto [it, fresh] = sums.try_emplace(g[static_cast<std::size_t>(i)], Eigen::RowVectorXd::Zero(3));
                it->second += m.row(i);
                ++counts[g[static_cast<std::size_t>(i)]];
            }
            for (auto& [key, s] : sums) EXPECT_LT((s / counts[key]).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(WithinTransform, AbsorbedCountForConnectedTwoWay) {
    std::mt19937_64 rng(2);
    auto p = random_panel(rng, 5, 20, 1);
    auto d = within_transform(to_design(p, FixedEffects::Both));
    EXPECT_EQ(d.absorbed, 5 + 20 - 1);
}

TEST(Ols, ExactLine) {
    Matrix x(1, 6), y(1, 6);
    x << 1, 2, 3, 4, 5, 6;
    y = 2.0 * x;
    auto fit = ols(stack_design("y", y, {"x"}, {&x}, FixedEffects::None, false));
    EXPECT_NEAR(fit.coef(0), 2.0, 1e-14);
    EXPECT_LT(fit.resid.cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Ols, DuplicatedColumnNamesBoth) {
    std::mt19937_64 rng(1);
    auto p = random_panel(rng, 3, 20, 1);
    Matrix dup = p.xs[0];
    try {
        ols(stack_design("y", p.y, {"x1", "x1_copy"}, {&p.xs[0], &dup}, FixedEffects::Region, true));
        FAIL() << "expected RankError";
    } catch (const RankError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("'x1'"), std::string::npos) << msg;
        EXPECT_NE(msg.find("'x1_copy'"), std::string::npos) << msg;
    }
}

TEST(Ols, ZeroVarianceColumnIsRankError) {
    Matrix y = Matrix::Random(3, 10), c = Matrix::Constant(3, 10, 2.0), x = Matrix::Random(3, 10);
    try {
        ols(stack_design("y", y, {"x", "c"}, {&x, &c}, FixedEffects::Both, true));
        FAIL();
    } catch (const RankError& e) {
        EXPECT_NE(std::string(e.what()).find("'c' has no variation"), std::string::npos) << e.what();
    }
}

TEST(Ols, MonteCarloSlopeRecovery) {
    // y = 1.5 x + e on 7 x 100 cells with region effects
    const int reps = 200;
    std::vector<double> est;
    for (int rep = 0; rep < reps; ++rep) {
        std::mt19937_64 rng(1000 + rep);
        std::normal_distribution<double> z(0.0, 1.0);
        Matrix x(7, 100), y(7, 100);
        for (int r = 0; r < 7; ++r)
            for (int t = 0; t < 100; ++t) {
                x(r, t) = z(rng) + r;
                y(r, t) = 1.5 * x(r, t) + 2.0 * r + z(rng);
            }
        est.push_back(ols(stack_design("y", y, {"x"}, {&x}, FixedEffects::Region, true)).coef(0));
    }
    double mean = 0, var = 0;
    for (double e : est) mean += e / reps;
    for (double e : est) var += (e - mean) * (e - mean) / (reps - 1);
    EXPECT_LT(std::abs(mean - 1.5), 3.0 * std::sqrt(var / reps));
}

TEST(Ols, FitInvariants) {
    std::mt19937_64 rng(17);
    for (auto fe : {FixedEffects::None, FixedEffects::Region, FixedEffects::Time, FixedEffects::Both}) {
        auto p = random_panel(rng, 5, 25, 3, 0.1);
        auto fit = ols(to_design(p, fe));
        EXPECT_EQ(fit.dof, fit.nobs - fit.rank - fit.design.absorbed);
        EXPECT_LT((fit.vcov - fit.vcov.transpose()).cwiseAbs().maxCoeff(), 1e-15);
        EXPECT_GE(min_eigenvalue(fit.vcov), -1e-10 * fit.vcov.trace());
        for (Eigen::Index j = 0; j < fit.coef.size(); ++j) EXPECT_EQ(fit.se(j), std::sqrt(fit.vcov(j, j)));
        Eigen::VectorXd ortho = fit.design.X.transpose() * fit.resid;
        double scale = fit.design.X.norm() * fit.resid.norm();
        EXPECT_LT(ortho.cwiseAbs().maxCoeff(), 1e-8 * scale);
    }
}

TEST(Ols, LsdvEquivalence) {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 40; ++rep) {
        for (auto fe : {FixedEffects::Region, FixedEffects::Time, FixedEffects::Both}) {
            auto p = random_panel(rng, 2 + rep % 8, 10 + rep, 1 + rep % 3, rep % 2 ? 0.2 : 0.0);
            auto raw = to_design(p, fe);
            auto fit = ols(raw);
            auto want = oracle::dummy_ols_slopes(raw.y, raw.X, raw.region, raw.period, has_region_fe(fe), has_time_fe(fe));
            for (Eigen::Index j = 0; j < want.size(); ++j)
                EXPECT_NEAR(fit.coef(j), want(j), 1e-8 * std::max(1.0, std::abs(want(j)))) << "rep " << rep << " fe " << to_string(fe);
        }
    }
}

TEST(Ols, FrischWaughLovell) {
    std::mt19937_64 rng(31);
    auto p = random_panel(rng, 6, 30, 4);
    auto full = ols(to_design(p, FixedEffects::Both));
    // partial x2, x3 (and the fixed effects) out of y, x0, x1
    auto base = within_transform(to_design(p, FixedEffects::Both));
    Eigen::MatrixXd Z = base.X.rightCols(2);
    Eigen::MatrixXd proj = Z * (Z.transpose() * Z).ldlt().solve(Z.transpose());
    Design partial = base;
    partial.y = base.y - proj * base.y;
    partial.X = base.X.leftCols(2) - proj * base.X.leftCols(2);
    partial.names = {"x0", "x1"};
    auto reduced = ols(partial);
    EXPECT_NEAR(reduced.coef(0), full.coef(0), 1e-10);
    EXPECT_NEAR(reduced.coef(1), full.coef(1), 1e-10);
}

TEST(Ols, RegionEffectRecovery) {
    Matrix x(3, 50), y(3, 50);
    std::mt19937_64 rng(4);
    std::normal_distribution<double> z;
    for (int r = 0; r < 3; ++r)
        for (int t = 0; t < 50; ++t) {
            x(r, t) = z(rng);
            y(r, t) = 0.7 * x(r, t) + 10.0 * (r + 1);
        }
    auto fit = ols(stack_design("y", y, {"x"}, {&x}, FixedEffects::Region, true));
    ASSERT_TRUE(fit.fe_estimates.has_value());
    for (int r = 0; r < 3; ++r) EXPECT_NEAR((*fit.fe_estimates)(r), 10.0 * (r + 1), 1e-10);
}

TEST(VcovClassical, ZeroResidualsGiveZero) {
    Matrix x(1, 6), y(1, 6);
    x << 1, -2, 3, 4, -5, 6;
    y = -3.0 * x;
    auto fit = ols(stack_design("y", y, {"x"}, {&x}, FixedEffects::None, false));
    EXPECT_LT(vcov_classical(fit).cwiseAbs().maxCoeff(), 1e-28);
}

TEST(VcovClassical, SingleRegressorClosedForm) {
    Matrix x(1, 8), y(1, 8);
    x << 1, 2, 3, 4, 5, 6, 7, 8;
    y << 2.1, 3.9, 6.2, 7.8, 10.3, 11.7, 14.4, 15.6;
    auto fit = ols(stack_design("y", y, {"x"}, {&x}, FixedEffects::None, false));
    double sxx = 0, sxy = 0;
    for (int t = 0; t < 8; ++t) {
        sxx += x(0, t) * x(0, t);
        sxy += x(0, t) * y(0, t);
    }
    double b = sxy / sxx, rss = 0;
    for (int t = 0; t < 8; ++t) rss += std::pow(y(0, t) - b * x(0, t), 2);
    double want = (rss / 7.0) / sxx;
    EXPECT_NEAR(vcov_classical(fit)(0, 0), want, 1e-12 * want);
}

TEST(VcovClassical, HomogeneousOfDegreeTwoInResiduals) {
    std::mt19937_64 rng(8);
    auto fit = ols(to_design(random_panel(rng, 4, 20, 2), FixedEffects::Region));
    auto scaled = fit;
    scaled.resid *= 2.0;
    EXPECT_TRUE(vcov_classical(scaled).isApprox(4.0 * vcov_classical(fit), 1e-14));
    fit.dof = 0;
    EXPECT_THROW(vcov_classical(fit), DofError);
}

TEST(DriscollKraay, SingleRegionMatchesNeweyWestDoubleLoop) {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> z;
    for (int L : {0, 1, 4}) {
        for (int rep = 0; rep < 10; ++rep) {
            Matrix x(1, 60), w(1, 60), y(1, 60);
            double e_prev = 0;
            for (int t = 0; t < 60; ++t) {
                x(0, t) = z(rng);
                w(0, t) = z(rng) + 0.5 * x(0, t);
                e_prev = 0.6 * e_prev + z(rng) * (1.0 + std::abs(x(0, t)));
                y(0, t) = 0.3 * x(0, t) - w(0, t) + e_prev;
            }
            auto fit = ols(stack_design("y", y, {"x", "w"}, {&x, &w}, FixedEffects::None, true));
            Eigen::MatrixXd dk = vcov_driscoll_kraay(fit, {L, false});
            Eigen::MatrixXd nw = oracle::newey_west(fit.design.X, fit.resid, L);
            EXPECT_LT((dk - nw).cwiseAbs().maxCoeff(), 1e-10 * nw.cwiseAbs().maxCoeff());
        }
    }
}

TEST(DriscollKraay, ConstantResidualsReduceToClassical) {
    Matrix x = Matrix::Random(1, 40), y = Matrix::Random(1, 40);
    auto fit = ols(stack_design("y", y, {"x"}, {&x}, FixedEffects::None, false));
    fit.resid.setConstant(0.37);
    Eigen::MatrixXd dk = vcov_driscoll_kraay(fit, {0, false});
    Eigen::MatrixXd classical = vcov_classical(fit);
    // dk = c^2 (X'X)^-1 and classical = (n c^2 / dof) (X'X)^-1
    EXPECT_NEAR(dk(0, 0) / classical(0, 0), static_cast<double>(fit.dof) / fit.nobs, 1e-12);
}

TEST(DriscollKraay, ZeroBandwidthIsCrossSectionWhite) {
    std::mt19937_64 rng(13);
    auto p = random_panel(rng, 7, 40, 3, 0.1);
    auto fit = ols(to_design(p, FixedEffects::Both));
    Eigen::MatrixXd dk = vcov_driscoll_kraay(fit, {0, false});
    Eigen::MatrixXd want = oracle::cross_section_white(fit.design.X, fit.resid, fit.design.period);
    EXPECT_LT((dk - want).cwiseAbs().maxCoeff(), 1e-10 * want.cwiseAbs().maxCoeff());
}

TEST(DriscollKraay, SmallSampleFactor) {
    std::mt19937_64 rng(14);
    auto fit = ols(to_design(random_panel(rng, 4, 30, 2), FixedEffects::Region));
    Eigen::MatrixXd off = vcov_driscoll_kraay(fit, {3, false});
    Eigen::MatrixXd on = vcov_driscoll_kraay(fit, {3, true});
    EXPECT_TRUE(on.isApprox(off * (30.0 / 28.0), 1e-13));
}

TEST(DriscollKraay, PsdOnRandomPanels) {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> nr(1, 8), nt(15, 50), nk(1, 4), nl(0, 6);
    for (int rep = 0; rep < 1000; ++rep) {
        const int regions = nr(rng);
        auto p = random_panel(rng, regions, nt(rng), nk(rng), rep % 3 == 0 ? 0.1 : 0.0);
        auto fit = ols(to_design(p, regions > 1 ? FixedEffects::Both : FixedEffects::Region));
        auto V = vcov_driscoll_kraay(fit, {nl(rng), rep % 2 == 0});
        EXPECT_LT((V - V.transpose()).cwiseAbs().maxCoeff(), 1e-14 * V.cwiseAbs().maxCoeff());
        ASSERT_GE(min_eigenvalue(V), -1e-10 * V.trace()) << "rep " << rep;
    }
}

TEST(DriscollKraay, BandwidthMustBeBelowPeriods) {
    Matrix x = Matrix::Random(2, 5), y = Matrix::Random(2, 5);
    auto fit = ols(stack_design("y", y, {"x"}, {&x}, FixedEffects::Region, true));
    EXPECT_THROW(vcov_driscoll_kraay(fit, {5, false}), BandwidthError);
    EXPECT_NO_THROW(vcov_driscoll_kraay(fit, {4, false}));
}

TEST(DriscollKraay, DefaultBandwidthRule) {
    EXPECT_EQ(default_bandwidth(100), 4);
    EXPECT_EQ(default_bandwidth(88), 3);
    EXPECT_EQ(default_bandwidth(10), 2);
    EXPECT_DOUBLE_EQ(bartlett_weight(0, 4), 1.0);
    EXPECT_DOUBLE_EQ(bartlett_weight(4, 4), 0.2);
}

TEST(ConfidenceBand, NinetyPercentMultiplier) {
    EXPECT_NEAR(critical_value(0.90), 1.6449, 5e-5);
    EXPECT_NEAR(critical_value(0.95), 1.959964, 1e-6);
    auto b = confidence_band(1.0, 0.0, 0.9);
    EXPECT_EQ(b.lo, 1.0);
    EXPECT_EQ(b.hi, 1.0);
    auto z = confidence_band(1.0, 2.0, 0.0);
    EXPECT_EQ(z.hi - z.lo, 0.0);
    EXPECT_THROW(critical_value(1.0), DomainError);
    EXPECT_GT(critical_value(0.9, Quantile::student_t(10)), critical_value(0.9));
}

TEST(SignificanceStars, Thresholds) {
    EXPECT_EQ(significance_stars(0.012, 0.1046), "");
    EXPECT_EQ(significance_stars(2.58, 1.0), "***");
    EXPECT_EQ(significance_stars(critical_value(0.99), 1.0), "***");
    EXPECT_EQ(significance_stars(-2.0, 1.0), "**");
    EXPECT_EQ(significance_stars(1.7, 1.0), "*");
    EXPECT_EQ(significance_stars(1.6, 1.0), "");
    EXPECT_EQ(significance_stars(0.0273, 0.0125), "**");
    EXPECT_EQ(significance_stars(0.2397, 0.0229), "***");
}
