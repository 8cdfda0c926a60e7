#pragma once

#include <optional>
#include <string>
#include <vector>

#include "climpanel/regress.hpp"

namespace climpanel {

/// Panel local projection of cumulative log growth on one shock:
///   log P[t+h] - log P[t-1] = b_h shock[t] + sum_n g_n dlog P[t-n] + a_r + d_t + e
struct LPSpec {
    std::string outcome;  // price level, strictly positive
    std::string shock;
    std::vector<int> horizons{0, 1, 2, 3, 4, 5, 6, 7, 8};
    int lags = 8;
    FixedEffects fixed_effects = FixedEffects::Both;
    /// Bandwidth < 0 selects max(default rule, h) per horizon.
    HACSpec hac;
    double level = 0.90;
    Quantile quantile;
    /// All leads and lags are taken from inside this window.
    std::optional<QuarterRange> sample;
};

struct ImpulseResponse {
    int horizon = 0;
    double estimate = 0.0;
    double se = 0.0;
    Band band;
    Eigen::Index nobs = 0;
    int bandwidth = 0;
    double p_value = 1.0;
    std::string stars;
};

struct HorizonFailure {
    int horizon = 0;
    std::string error;
};

struct IrfResult {
    std::string shock;
    std::string outcome;
    std::vector<ImpulseResponse> responses;
    std::vector<HorizonFailure> failures;
};

inline std::string lp_lag_name(const std::string& outcome, int n) { return "dlog_" + outcome + "_L" + std::to_string(n); }

inline void validate(const LPSpec& spec) {
    if (spec.lags < 0) throw ConfigError("LP lags must be >= 0");
    for (int h : spec.horizons)
        if (h < 0) throw ConfigError("LP horizons must be >= 0");
    if (!(spec.level >= 0.0 && spec.level < 1.0)) throw ConfigError("LP band level must be in [0, 1)");
}

/// Design for horizon h. Outcome column is log P[t+h] - log P[t-1]; regressors are the
/// shock at t and lags 1..lags of dlog P.
inline Design build_lp_design(const PanelDataset& full, const LPSpec& spec, int h) {
    validate(spec);
    if (h < 0) throw ConfigError("LP horizon must be >= 0");
    const PanelDataset ds = spec.sample ? subset(full, {spec.outcome, spec.shock}, *spec.sample) : full;

    const Matrix logp = log_levels(ds, spec.outcome);
    const Matrix cumulative = forward_minus_lag(logp, h);
    const Matrix growth = first_difference(logp);

    std::vector<Matrix> lag_cols;
    lag_cols.reserve(static_cast<std::size_t>(spec.lags));
    for (int n = 1; n <= spec.lags; ++n) lag_cols.push_back(lagged(growth, n));

    std::vector<std::string> names{spec.shock};
    std::vector<const Matrix*> cols{&ds.series(spec.shock)};
    for (int n = 1; n <= spec.lags; ++n) {
        names.push_back(lp_lag_name(spec.outcome, n));
        cols.push_back(&lag_cols[static_cast<std::size_t>(n - 1)]);
    }
    Design d = stack_design("cumlog" + std::to_string(h) + "_" + spec.outcome, cumulative, names, cols,
                            spec.fixed_effects, true);
    if (d.nobs() <= d.k())
        throw SampleError("horizon " + std::to_string(h) + ": " + std::to_string(d.nobs()) + " usable rows for " +
                          std::to_string(d.k()) + " coefficients (" + std::to_string(ds.n_regions()) + " regions x " +
                          std::to_string(ds.n_periods()) + " quarters, " + std::to_string(spec.lags) + " lags)");
    return d;
}

/// Fits one horizon and extracts the shock response with Driscoll-Kraay inference.
inline ImpulseResponse estimate_horizon(const PanelDataset& ds, const LPSpec& spec, int h) {
    FitResult fit = ols(build_lp_design(ds, spec, h));
    HACSpec hac = spec.hac;
    if (hac.bandwidth < 0) hac.bandwidth = std::max(default_bandwidth(time_span(fit)), h);
    fit = with_vcov(fit, vcov_driscoll_kraay(fit, hac), "driscoll-kraay");

    Quantile q = spec.quantile;
    if (q.kind == Quantile::Kind::StudentT && q.dof <= 0.0) q.dof = static_cast<double>(fit.dof);

    ImpulseResponse ir;
    ir.horizon = h;
    ir.estimate = fit.coef_of(spec.shock);
    ir.se = fit.se_of(spec.shock);
    ir.band = confidence_band(ir.estimate, ir.se, spec.level, q);
    ir.nobs = fit.nobs;
    ir.bandwidth = hac.bandwidth;
    ir.p_value = p_value(ir.estimate, ir.se, q);
    ir.stars = significance_stars(ir.estimate, ir.se, q);
    return ir;
}

/// One regression per horizon. A failing horizon is recorded and the rest still run.
inline IrfResult estimate_irf(const PanelDataset& ds, const LPSpec& spec) {
    validate(spec);
    IrfResult out{spec.shock, spec.outcome, {}, {}};
    for (int h : spec.horizons) {
        try {
            out.responses.push_back(estimate_horizon(ds, spec, h));
        } catch (const LookupError&) {
            throw;
        } catch (const DomainError&) {
            throw;
        } catch (const Error& e) {
            out.failures.push_back({h, e.what()});
        }
    }
    return out;
}

struct IrfRow {
    std::string shock;
    std::string outcome;
    int horizon = 0;
    double estimate = 0.0;
    double se = 0.0;
    std::string stars;
};

inline std::vector<IrfRow> irf_table(const IrfResult& irf) {
    std::vector<IrfRow> rows;
    for (const auto& r : irf.responses) rows.push_back({irf.shock, irf.outcome, r.horizon, r.estimate, r.se, r.stars});
    return rows;
}

}  // namespace climpanel
