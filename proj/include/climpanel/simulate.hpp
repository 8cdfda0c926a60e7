#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "climpanel/climate.hpp"
#include "climpanel/dataset.hpp"

namespace climpanel::sim {

/// Generator for replication `rep` of a seeded experiment; streams do not overlap in practice.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t rep = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(rep), static_cast<std::uint32_t>(rep >> 32), 0x636c696du};
    return std::mt19937_64(seq);
}

inline std::vector<std::string> region_names(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back("R" + std::to_string(i));
    return out;
}

/// dlog P[r,t] = mu + a_r + d_t + beta * X[r,t] + e[r,t] with X, e i.i.d. normal.
struct LpDgp {
    int regions = 7;
    int quarters = 88;
    double beta = 0.3;
    double mean_growth = 0.01;
    double region_sd = 0.002;  // a_r
    double time_sd = 0.005;    // d_t, common to all regions
    double shock_sd = 0.01;
    double noise_sd = 0.01;
    Quarter start{2002, 1};
};

/// Panel with "cpi" (price level, 100 before the first growth step) and "shock".
inline PanelDataset simulate_lp(const LpDgp& g, std::mt19937_64& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    Matrix shock(g.regions, g.quarters), cpi(g.regions, g.quarters);
    std::vector<double> a(static_cast<std::size_t>(g.regions)), d(static_cast<std::size_t>(g.quarters));
    for (auto& v : a) v = g.region_sd * z(rng);
    for (auto& v : d) v = g.time_sd * z(rng);
    for (int r = 0; r < g.regions; ++r) {
        double logp = std::log(100.0);
        for (int t = 0; t < g.quarters; ++t) {
            double x = g.shock_sd * z(rng);
            double e = g.noise_sd * z(rng);
            shock(r, t) = x;
            if (t > 0) logp += g.mean_growth + a[static_cast<std::size_t>(r)] + d[static_cast<std::size_t>(t)] + g.beta * x + e;
            cpi(r, t) = std::exp(logp);
        }
    }
    return PanelDataset(region_names(g.regions), g.start, static_cast<std::size_t>(g.quarters))
        .with_series("cpi", std::move(cpi), "index")
        .with_series("shock", std::move(shock), "anomaly");
}

/// dy[t] = a_r + phi dy[t-1] + beta0 dx1[t] + beta1 dx1[t-1] + e, with x1..x4 i.i.d. levels;
/// only x1 enters. True long-run effect of x1 is (beta0 + beta1) / (1 - phi).
struct ArdlDgp {
    int regions = 7;
    int quarters = 88;
    double phi = 0.5;
    double beta0 = 0.2;
    double beta1 = 0.1;
    double region_sd = 0.005;
    double regressor_sd = 1.0;
    double noise_sd = 0.05;
    int presample = 100;
    Quarter start{2002, 1};

    double theta() const { return (beta0 + beta1) / (1.0 - phi); }
};

/// Panel with "logcpi" (log price level) and block variables "x1".."x4".
inline PanelDataset simulate_ardl(const ArdlDgp& g, std::mt19937_64& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    const int total = g.presample + g.quarters;
    Matrix logcpi(g.regions, g.quarters);
    std::vector<Matrix> xs(4, Matrix(g.regions, g.quarters));
    for (int r = 0; r < g.regions; ++r) {
        const double a = g.region_sd * z(rng);
        double x_prev = g.regressor_sd * z(rng);
        double dy_prev = 0.0, dx_prev = 0.0, y = std::log(100.0);
        for (int s = 0; s < total; ++s) {
            double x[4];
            for (double& v : x) v = g.regressor_sd * z(rng);
            const double dx = x[0] - x_prev;
            const double dy = a + g.phi * dy_prev + g.beta0 * dx + g.beta1 * dx_prev + g.noise_sd * z(rng);
            y += dy;
            if (s >= g.presample) {
                const int t = s - g.presample;
                logcpi(r, t) = y;
                for (int k = 0; k < 4; ++k) xs[static_cast<std::size_t>(k)](r, t) = x[k];
            }
            x_prev = x[0];
            dx_prev = dx;
            dy_prev = dy;
        }
    }
    PanelDataset ds(region_names(g.regions), g.start, static_cast<std::size_t>(g.quarters));
    ds = ds.with_series("logcpi", std::move(logcpi), "log index");
    for (int k = 0; k < 4; ++k)
        ds = ds.with_series("x" + std::to_string(k + 1), std::move(xs[static_cast<std::size_t>(k)]), "anomaly");
    return ds;
}

/// Full synthetic pipeline input: quarterly temperature (deg C) and precipitation (mm)
/// with seasonal cycles from `climate_start`, and six price indices observed from
/// `price_start` (missing before). Inflation loads on the positive precipitation
/// anomaly of the `m_effect` norm through `precip_effect`.
struct DemoDgp {
    int regions = 7;
    Quarter climate_start{1962, 1};
    Quarter price_start{2002, 1};
    Quarter end{2024, 4};
    int m_effect = 30;
    double precip_effect = 0.002;
    double temp_trend = 0.004;  // deg C per quarter
};

inline const std::vector<std::string>& demo_outcomes() {
    static const std::vector<std::string> names{"cpi_all",      "cpi_food", "cpi_nonfood",
                                                "cpi_services", "cpi_agri", "cpi_energy"};
    return names;
}

inline PanelDataset simulate_demo(const DemoDgp& g, std::mt19937_64& rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    const auto periods = static_cast<Eigen::Index>(g.end - g.climate_start + 1);
    const auto price_t0 = static_cast<Eigen::Index>(g.price_start - g.climate_start);
    if (periods <= 0 || price_t0 < 1 || price_t0 >= periods) throw ConfigError("demo: inconsistent date range");

    static constexpr double kTempCycle[4] = {-4.0, 3.0, 2.0, -1.0};
    static constexpr double kRainCycle[4] = {15.0, 40.0, 160.0, 70.0};
    Matrix temp(g.regions, periods), precip(g.regions, periods);
    for (int r = 0; r < g.regions; ++r) {
        const double base = 18.0 + 1.5 * z(rng);
        const double wet = 0.6 + 0.1 * r;
        for (Eigen::Index t = 0; t < periods; ++t) {
            const int q = (g.climate_start + t).quarter - 1;
            temp(r, t) = base + kTempCycle[q] + g.temp_trend * static_cast<double>(t) + 0.7 * z(rng);
            precip(r, t) = std::max(0.0, wet * kRainCycle[q] * (1.0 + 0.35 * z(rng)));
        }
    }
    const auto precip_pos = sign_split(anomaly(precip, NormParams(g.m_effect))).positive;

    PanelDataset ds(region_names(g.regions), g.climate_start, static_cast<std::size_t>(periods));
    ds = ds.with_series("temp", temp, "degC").with_series("precip", precip, "mm");
    std::vector<double> common(static_cast<std::size_t>(periods));
    for (auto& c : common) c = 0.004 * z(rng);
    const double loading[6] = {1.0, 1.4, 0.6, 0.5, 2.0, 1.2};
    for (std::size_t k = 0; k < demo_outcomes().size(); ++k) {
        Matrix cpi = Matrix::Constant(g.regions, periods, kMissing);
        for (int r = 0; r < g.regions; ++r) {
            double logp = std::log(100.0);
            double prev = 0.0;
            for (Eigen::Index t = price_t0; t < periods; ++t) {
                if (t > price_t0) {
                    double x = precip_pos(r, t);
                    double dlog = 0.008 + common[static_cast<std::size_t>(t)] + 0.25 * prev +
                                  loading[k] * g.precip_effect * (std::isnan(x) ? 0.0 : x) + 0.006 * loading[k] * z(rng);
                    logp += dlog;
                    prev = dlog - 0.008;
                }
                cpi(r, t) = std::exp(logp);
            }
        }
        ds = ds.with_series(demo_outcomes()[k], std::move(cpi), "index");
    }
    return ds;
}

}  // namespace climpanel::sim
