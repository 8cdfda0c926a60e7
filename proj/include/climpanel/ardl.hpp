#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "climpanel/climate.hpp"
#include "climpanel/regress.hpp"

namespace climpanel {

/// How the outcome series is stored in the panel.
enum class OutcomeForm {
    Level,   // price index; dy = dlog P
    Log,     // log price index; dy = first difference
    Growth,  // already dy
};

enum class CovarianceKind { Classical, DriscollKraay };

/// Panel ARDL with region fixed effects and a block of regressors entered in first
/// differences:
///   dy[t] = a_r + sum_{l=1..p} phi_l dy[t-l] + sum_{l=0..p} beta_l' dx[t-l] + e
struct ARDLSpec {
    std::string outcome;
    OutcomeForm form = OutcomeForm::Level;
    int p = 4;
    /// Signed anomaly block, conventionally [T+, T-, P+, P-] for one norm window.
    std::vector<std::string> block;
    FixedEffects fixed_effects = FixedEffects::Region;
    int m = 30;
    CovarianceKind covariance = CovarianceKind::Classical;
    HACSpec hac;
    Quantile quantile;
    std::optional<QuarterRange> sample;
};

/// Block [T+, T-, P+, P-] for the given temperature and precipitation variables.
inline std::vector<std::string> signed_block(const std::string& temperature, const std::string& precipitation, int m) {
    return {anomaly_pos_name(temperature, m), anomaly_neg_name(temperature, m), anomaly_pos_name(precipitation, m),
            anomaly_neg_name(precipitation, m)};
}

inline std::string ardl_ar_name(int l) { return "dy_L" + std::to_string(l); }
inline std::string ardl_dl_name(const std::string& var, int l) { return "d_" + var + "_L" + std::to_string(l); }

/// Coefficients before fixed-effect absorption: intercept, p AR lags, K(p+1) block lags.
inline int ardl_column_count(int p, int block_size) { return 1 + p + block_size * (p + 1); }

inline Matrix ardl_outcome_growth(const PanelDataset& ds, const ARDLSpec& spec) {
    switch (spec.form) {
        case OutcomeForm::Level: return first_difference(log_levels(ds, spec.outcome));
        case OutcomeForm::Log: return first_difference(ds.series(spec.outcome));
        case OutcomeForm::Growth: return ds.series(spec.outcome);
    }
    return {};
}

inline Design build_ardl_design(const PanelDataset& full, const ARDLSpec& spec) {
    if (spec.p < 0) throw ConfigError("ARDL lag order p must be >= 0");
    if (spec.block.empty()) throw ConfigError("ARDL regressor block is empty");
    std::vector<std::string> vars{spec.outcome};
    vars.insert(vars.end(), spec.block.begin(), spec.block.end());
    const PanelDataset ds = spec.sample ? subset(full, vars, *spec.sample) : full;

    const Matrix dy = ardl_outcome_growth(ds, spec);
    std::vector<Matrix> storage;
    std::vector<std::string> names;
    storage.reserve(static_cast<std::size_t>(spec.p + spec.block.size() * (spec.p + 1)));
    for (int l = 1; l <= spec.p; ++l) {
        storage.push_back(lagged(dy, l));
        names.push_back(ardl_ar_name(l));
    }
    for (const auto& var : spec.block) {
        const Matrix dx = first_difference(ds.series(var));
        for (int l = 0; l <= spec.p; ++l) {
            storage.push_back(lagged(dx, l));
            names.push_back(ardl_dl_name(var, l));
        }
    }
    std::vector<const Matrix*> cols;
    for (const auto& m : storage) cols.push_back(&m);
    Design d = stack_design("dy_" + spec.outcome, dy, names, cols, spec.fixed_effects, true);
    if (d.nobs() <= d.k())
        throw SampleError("ARDL(p=" + std::to_string(spec.p) + "): " + std::to_string(d.nobs()) + " usable rows for " +
                          std::to_string(d.k()) + " coefficients; check the anomaly burn-in and the sample window");
    return d;
}

struct LongRunEffect {
    std::string name;
    double estimate = 0.0;
    double se = 0.0;
    double z = 0.0;
    double p_value = 1.0;
    std::string stars;
    double short_run_sum = 0.0;  // sum of the beta_l for this variable
    double annualized = 0.0;
};

struct LongRunTable {
    std::string outcome;
    int m = 0;
    int p = 0;
    std::string covariance;
    Eigen::Index nobs = 0;
    std::vector<LongRunEffect> effects;  // block order
    LongRunEffect phi;                   // 1 - sum phi_l

    const LongRunEffect& effect(const std::string& name) const {
        for (const auto& e : effects)
            if (e.name == name) return e;
        throw LookupError("no long-run effect for '" + name + "'");
    }
};

struct ArdlResult {
    FitResult fit;
    LongRunTable table;
};

/// theta * 2 / (m + 1): the long-run effect per unit of the unscaled climate deviation.
inline double annualize(double theta, int m) {
    if (m < 1) throw DomainError("annualize needs m >= 1");
    return theta * 2.0 / (m + 1.0);
}

/// Smallest |phi| for which the long-run effect is reported.
inline constexpr double kUnitRootTolerance = 1e-6;

/// Long-run effects theta_k = sum_l beta_lk / phi with delta-method standard errors.
inline LongRunTable long_run_effects(const FitResult& fit, const ARDLSpec& spec, const Quantile& q) {
    const Eigen::Index k = fit.coef.size();
    double phi = 1.0;
    Eigen::VectorXd grad_phi = Eigen::VectorXd::Zero(k);  // d phi / d coef
    for (int l = 1; l <= spec.p; ++l) {
        Eigen::Index j = fit.index_of(ardl_ar_name(l));
        phi -= fit.coef(j);
        grad_phi(j) = -1.0;
    }
    if (!(std::abs(phi) >= kUnitRootTolerance))
        throw UnitRootError("1 - sum(phi) = " + csv::format_double(phi) + " is within " +
                            csv::format_double(kUnitRootTolerance) + " of zero; long-run effect undefined");

    LongRunTable t;
    t.outcome = spec.outcome;
    t.m = spec.m;
    t.p = spec.p;
    t.covariance = fit.vcov_type;
    t.nobs = fit.nobs;

    t.phi.name = "phi";
    t.phi.estimate = phi;
    t.phi.se = std::sqrt(std::max(0.0, grad_phi.dot(fit.vcov * grad_phi)));
    t.phi.z = t.phi.estimate / t.phi.se;
    t.phi.p_value = p_value(t.phi.estimate, t.phi.se, q);
    t.phi.stars = significance_stars(t.phi.estimate, t.phi.se, q);
    t.phi.short_run_sum = phi;
    t.phi.annualized = kMissing;

    for (const auto& var : spec.block) {
        double sum = 0.0;
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(k);
        for (int l = 0; l <= spec.p; ++l) {
            Eigen::Index j = fit.index_of(ardl_dl_name(var, l));
            sum += fit.coef(j);
            grad(j) = 1.0 / phi;
        }
        LongRunEffect e;
        e.name = var;
        e.short_run_sum = sum;
        e.estimate = sum / phi;
        // d theta / d phi_l = sum / phi^2 (phi falls one-for-one with each phi_l)
        grad -= (sum / (phi * phi)) * grad_phi;
        e.se = std::sqrt(std::max(0.0, grad.dot(fit.vcov * grad)));
        e.z = e.estimate / e.se;
        e.p_value = p_value(e.estimate, e.se, q);
        e.stars = significance_stars(e.estimate, e.se, q);
        e.annualized = annualize(e.estimate, spec.m);
        t.effects.push_back(e);
    }
    return t;
}

inline ArdlResult estimate_ardl(const PanelDataset& ds, const ARDLSpec& spec) {
    FitResult fit = ols(build_ardl_design(ds, spec));
    if (spec.covariance == CovarianceKind::DriscollKraay) {
        fit = with_vcov(fit, vcov_driscoll_kraay(fit, spec.hac), "driscoll-kraay");
    } else {
        fit = with_vcov(fit, vcov_classical(fit), "classical");
    }
    Quantile q = spec.quantile;
    if (q.kind == Quantile::Kind::StudentT && q.dof <= 0.0) q.dof = static_cast<double>(fit.dof);
    LongRunTable table = long_run_effects(fit, spec, q);
    return {std::move(fit), std::move(table)};
}

struct LagSelection {
    int p = 0;
    std::vector<double> bic;  // index p - p_min
    int p_min = 1;
};

/// BIC over p in [p_min, p_max] on the common sample usable at p_max.
inline LagSelection select_lag_order_bic(const PanelDataset& ds, ARDLSpec spec, int p_min = 1, int p_max = 8) {
    if (p_min < 0 || p_max < p_min) throw ConfigError("invalid lag search range");
    spec.p = p_max;
    const Design widest = build_ardl_design(ds, spec);
    std::vector<char> usable(static_cast<std::size_t>(widest.n_regions) * static_cast<std::size_t>(widest.n_periods), 0);
    for (std::size_t i = 0; i < widest.region.size(); ++i)
        usable[static_cast<std::size_t>(widest.region[i]) * static_cast<std::size_t>(widest.n_periods) +
               static_cast<std::size_t>(widest.period[i])] = 1;

    LagSelection sel;
    sel.p_min = p_min;
    double best = INFINITY;
    for (int p = p_min; p <= p_max; ++p) {
        spec.p = p;
        Design d = build_ardl_design(ds, spec);
        std::vector<char> keep(d.region.size());
        for (std::size_t i = 0; i < d.region.size(); ++i)
            keep[i] = usable[static_cast<std::size_t>(d.region[i]) * static_cast<std::size_t>(d.n_periods) +
                             static_cast<std::size_t>(d.period[i])];
        FitResult f = ols(detail::keep_rows(d, keep));
        const double n = static_cast<double>(f.nobs);
        const double params = static_cast<double>(f.rank + f.design.absorbed);
        double bic = n * std::log(f.rss / n) + params * std::log(n);
        sel.bic.push_back(bic);
        if (bic < best) {
            best = bic;
            sel.p = p;
        }
    }
    return sel;
}

struct SuiteCell {
    std::string outcome;
    int m = 0;
    std::optional<ArdlResult> result;
    std::string error;
};

/// One ARDL per (outcome, m), ordered by outcome then ascending m. `base` supplies the
/// settings shared by every cell; `block_for(m)` names the block for each window.
/// The anomaly series for every m must already be in `ds`.
inline std::vector<SuiteCell> ardl_suite(const PanelDataset& ds, const std::vector<std::string>& outcomes,
                                         std::vector<int> ms, const ARDLSpec& base,
                                         const std::function<std::vector<std::string>(int)>& block_for) {
    std::sort(ms.begin(), ms.end());
    std::vector<SuiteCell> cells;
    for (const auto& outcome : outcomes) {
        for (int m : ms) {
            SuiteCell cell{outcome, m, std::nullopt, {}};
            ARDLSpec spec = base;
            spec.outcome = outcome;
            spec.m = m;
            try {
                spec.block = block_for(m);
                cell.result = estimate_ardl(ds, spec);
            } catch (const Error& e) {
                cell.error = e.what();
            }
            cells.push_back(std::move(cell));
        }
    }
    return cells;
}

}  // namespace climpanel
