#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "climpanel/dataset.hpp"

namespace climpanel {

enum class NormMethod {
    /// Quarter q of year y averages quarter q of the m preceding years.
    SameQuarter,
    /// Calendar-blind mean of the m * frequency preceding observations.
    Rolling,
};

/// Moving-average window for a historical norm.
struct NormParams {
    int m = 30;          // years in the moving average
    int frequency = 4;   // observations per year
    NormMethod method = NormMethod::SameQuarter;

    NormParams() = default;
    NormParams(int years, int freq = 4, NormMethod how = NormMethod::SameQuarter)
        : m(years), frequency(freq), method(how) {
        validate();
    }

    void validate() const {
        if (m < 1) throw DomainError("norm window m must be >= 1, got " + std::to_string(m));
        if (frequency < 1) throw DomainError("frequency must be >= 1, got " + std::to_string(frequency));
    }

    /// Anomaly scaling factor 2 / (m + 1).
    double scale() const { return 2.0 / (m + 1.0); }

    /// Observations of history needed before the first defined norm.
    int burn_in() const { return m * frequency; }
};

/// Trailing moving-average norm. Cell t depends only on cells strictly before t;
/// cells without a full window (or with a missing input in it) are missing.
inline Matrix historical_norm(const Matrix& levels, const NormParams& params) {
    params.validate();
    const int window = params.burn_in();
    Matrix norm = Matrix::Constant(levels.rows(), levels.cols(), kMissing);
    for (Eigen::Index r = 0; r < levels.rows(); ++r) {
        for (Eigen::Index t = window; t < levels.cols(); ++t) {
            double sum = 0.0;
            if (params.method == NormMethod::SameQuarter) {
                for (int l = 1; l <= params.m; ++l) sum += levels(r, t - static_cast<Eigen::Index>(l) * params.frequency);
                norm(r, t) = sum / params.m;
            } else {
                for (int l = 1; l <= window; ++l) sum += levels(r, t - l);
                norm(r, t) = sum / window;
            }
        }
    }
    return norm;  // NaN inputs propagate through the sums
}

/// Scaled deviation of a climate level from its historical norm.
struct AnomalySeries {
    std::string variable;
    NormParams params;
    Quarter start;  // quarter of column 0
    Matrix values;  // scale * (level - norm)
    Matrix norm;
};

inline AnomalySeries anomaly(const Matrix& levels, const NormParams& params, std::string variable = {},
                             Quarter start = {}) {
    AnomalySeries a;
    a.variable = std::move(variable);
    a.params = params;
    a.start = start;
    a.norm = historical_norm(levels, params);
    a.values = params.scale() * (levels - a.norm);
    return a;
}

inline AnomalySeries anomaly(const PanelDataset& ds, const std::string& var, const NormParams& params) {
    return anomaly(ds.series(var), params, var, ds.start());
}

/// x = positive + negative with positive >= 0 and negative <= 0.
struct SignedAnomalyPair {
    Matrix positive;
    Matrix negative;
};

inline SignedAnomalyPair sign_split(const Matrix& a) {
    SignedAnomalyPair out{Matrix(a.rows(), a.cols()), Matrix(a.rows(), a.cols())};
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        double x = a.data()[i];
        double pos = 0.0, neg = 0.0;
        if (std::isnan(x)) {
            pos = neg = x;
        } else if (x > 0.0) {
            pos = x;
        } else if (x < 0.0) {
            neg = x;
        } else {
            pos = neg = x;  // keeps the sign of zero so pos + neg reproduces x bitwise
        }
        out.positive.data()[i] = pos;
        out.negative.data()[i] = neg;
    }
    return out;
}

inline SignedAnomalyPair sign_split(const AnomalySeries& a) { return sign_split(a.values); }

// ---------------------------------------------------------------------------
// Seasonal shocks
// ---------------------------------------------------------------------------

enum class Season { Winter, Spring, Summer, Autumn };
enum class Polarity { Hot, Cold, Wet, Dry };

inline constexpr std::array<Season, 4> kAllSeasons{Season::Winter, Season::Spring, Season::Summer, Season::Autumn};

inline std::string to_string(Season s) {
    switch (s) {
        case Season::Winter: return "winter";
        case Season::Spring: return "spring";
        case Season::Summer: return "summer";
        case Season::Autumn: return "autumn";
    }
    return "?";
}

inline std::string to_string(Polarity p) {
    switch (p) {
        case Polarity::Hot: return "hot";
        case Polarity::Cold: return "cold";
        case Polarity::Wet: return "wet";
        case Polarity::Dry: return "dry";
    }
    return "?";
}

inline Season parse_season(const std::string& s) {
    for (auto season : kAllSeasons)
        if (to_string(season) == s) return season;
    throw DomainError("unknown season '" + s + "'");
}

inline Polarity parse_polarity(const std::string& s) {
    for (auto p : {Polarity::Hot, Polarity::Cold, Polarity::Wet, Polarity::Dry})
        if (to_string(p) == s) return p;
    throw DomainError("unknown polarity '" + s + "'");
}

inline bool is_upper(Polarity p) { return p == Polarity::Hot || p == Polarity::Wet; }

/// Season of each calendar quarter (index 0 = Q1). Default is the northern-hemisphere map.
using SeasonMap = std::array<Season, 4>;
inline constexpr SeasonMap kNorthernSeasons{Season::Winter, Season::Spring, Season::Summer, Season::Autumn};

enum class ShockForm {
    /// Signed part of the anomaly inside the season, zero elsewhere.
    SignConditioned,
    /// Raw anomaly times a season dummy; polarity only labels the series.
    Interaction,
};

struct SeasonalShock {
    Season season = Season::Winter;
    Polarity polarity = Polarity::Hot;
    Matrix values;
};

inline SeasonalShock seasonal_shock(const AnomalySeries& a, Season season, Polarity polarity,
                                    const SeasonMap& seasons = kNorthernSeasons,
                                    ShockForm form = ShockForm::SignConditioned) {
    SeasonalShock out{season, polarity, Matrix::Zero(a.values.rows(), a.values.cols())};
    auto split = sign_split(a.values);
    const Matrix& src = form == ShockForm::Interaction ? a.values : (is_upper(polarity) ? split.positive : split.negative);
    for (Eigen::Index t = 0; t < a.values.cols(); ++t) {
        Quarter q = a.start + t;
        if (seasons[static_cast<std::size_t>(q.quarter - 1)] == season) out.values.col(t) = src.col(t);
    }
    // Undefined anomalies stay undefined outside the season too.
    for (Eigen::Index i = 0; i < a.values.size(); ++i)
        if (std::isnan(a.values.data()[i])) out.values.data()[i] = kMissing;
    return out;
}

// ---------------------------------------------------------------------------
// Regional aggregation
// ---------------------------------------------------------------------------

/// Weighted mean of unit series into regions: region value = sum(w x) / sum(w).
/// `region_of_unit[u]` is the row of unit u in the output.
inline Matrix weighted_aggregate(const Matrix& units, std::span<const std::size_t> region_of_unit,
                                 std::span<const double> weights, std::size_t n_regions) {
    if (region_of_unit.size() != static_cast<std::size_t>(units.rows()) || weights.size() != region_of_unit.size())
        throw SchemaError("weighted_aggregate: unit, assignment and weight counts differ");
    std::vector<double> total(n_regions, 0.0);
    for (std::size_t u = 0; u < weights.size(); ++u) {
        if (!(weights[u] >= 0.0)) throw DegenerateWeightError("negative or NaN weight for unit " + std::to_string(u));
        if (region_of_unit[u] >= n_regions) throw SchemaError("unit " + std::to_string(u) + " assigned to unknown region");
        total[region_of_unit[u]] += weights[u];
    }
    for (std::size_t r = 0; r < n_regions; ++r)
        if (!(total[r] > 0.0)) throw DegenerateWeightError("region " + std::to_string(r) + " has zero total weight");

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(n_regions), units.cols());
    for (std::size_t u = 0; u < weights.size(); ++u)
        out.row(static_cast<Eigen::Index>(region_of_unit[u])) += weights[u] * units.row(static_cast<Eigen::Index>(u));
    for (std::size_t r = 0; r < n_regions; ++r) out.row(static_cast<Eigen::Index>(r)) /= total[r];
    return out;
}

struct UnitWeight {
    std::string unit;
    std::string region;
    double weight = 1.0;
};

/// Aggregates unit-level series (rows of `units` are unit ids) into a regional panel.
/// Regions appear in order of first mention in `assignment`.
inline PanelDataset weighted_aggregate(const PanelDataset& units, const std::vector<UnitWeight>& assignment,
                                       const std::vector<std::string>& vars = {}) {
    std::vector<std::string> regions;
    std::vector<std::size_t> unit_rows, region_of;
    std::vector<double> weights;
    for (const auto& a : assignment) {
        auto it = std::find(regions.begin(), regions.end(), a.region);
        if (it == regions.end()) {
            regions.push_back(a.region);
            it = regions.end() - 1;
        }
        unit_rows.push_back(units.region_index(a.unit));
        region_of.push_back(static_cast<std::size_t>(it - regions.begin()));
        weights.push_back(a.weight);
    }
    PanelDataset out(regions, units.start(), units.n_periods());
    for (const auto& v : vars.empty() ? units.variables() : vars) {
        const Matrix& src = units.series(v);
        Matrix picked(static_cast<Eigen::Index>(unit_rows.size()), src.cols());
        for (std::size_t k = 0; k < unit_rows.size(); ++k)
            picked.row(static_cast<Eigen::Index>(k)) = src.row(static_cast<Eigen::Index>(unit_rows[k]));
        out = out.with_series(v, weighted_aggregate(picked, region_of, weights, regions.size()), units.unit(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dataset write-back
// ---------------------------------------------------------------------------

inline std::string anomaly_name(const std::string& var, int m) { return var + "_anom_m" + std::to_string(m); }
inline std::string anomaly_pos_name(const std::string& var, int m) { return anomaly_name(var, m) + "_pos"; }
inline std::string anomaly_neg_name(const std::string& var, int m) { return anomaly_name(var, m) + "_neg"; }
inline std::string seasonal_name(const std::string& var, Season s, Polarity p, int m) {
    return var + "_" + to_string(s) + "_" + to_string(p) + "_m" + std::to_string(m);
}

struct ClimateOptions {
    /// Labels for the upper/lower polarity: hot/cold for temperature, wet/dry for precipitation.
    Polarity upper = Polarity::Hot;
    Polarity lower = Polarity::Cold;
    SeasonMap seasons = kNorthernSeasons;
    ShockForm form = ShockForm::SignConditioned;
};

/// First quarter at which an anomaly with these parameters is defined on `ds`.
inline Quarter first_anomaly_quarter(const PanelDataset& ds, const NormParams& params) {
    return ds.start() + params.burn_in();
}

/// Throws BurnInError unless `window` starts at or after the first defined anomaly quarter.
inline void require_burn_in(const PanelDataset& ds, const NormParams& params, const QuarterRange& window) {
    Quarter first = first_anomaly_quarter(ds, params);
    if (window.first < first)
        throw BurnInError("estimation window starts " + window.first.str() + " but the m=" + std::to_string(params.m) +
                          " norm needs " + std::to_string(params.burn_in()) + " quarters of history; data start " +
                          ds.start().str() + ", first anomaly " + first.str());
}

/// Adds the anomaly with its signed split plus all eight seasonal shocks of `var`.
inline PanelDataset add_climate_series(const PanelDataset& ds, const std::string& var, const NormParams& params,
                                       const ClimateOptions& opts = {}) {
    if (static_cast<std::size_t>(params.burn_in()) >= ds.n_periods())
        throw BurnInError("'" + var + "' has " + std::to_string(ds.n_periods()) + " quarters; the m=" +
                          std::to_string(params.m) + " norm needs more than " + std::to_string(params.burn_in()));
    auto a = anomaly(ds, var, params);
    auto split = sign_split(a);
    const std::string unit = ds.unit(var);
    const int m = params.m;
    PanelDataset out = ds.with_series(anomaly_name(var, m), a.values, unit)
                           .with_series(anomaly_pos_name(var, m), split.positive, unit)
                           .with_series(anomaly_neg_name(var, m), split.negative, unit);
    for (auto season : kAllSeasons) {
        for (auto pol : {opts.upper, opts.lower}) {
            auto shock = seasonal_shock(a, season, pol, opts.seasons, opts.form);
            out = out.with_series(seasonal_name(var, season, pol, m), std::move(shock.values), unit);
        }
    }
    return out;
}

}  // namespace climpanel
