#pragma once

// Run configuration: INI-style sections parsed with Boost.PropertyTree, validated
// before anything is computed.

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "climpanel/ardl.hpp"
#include "climpanel/climate.hpp"
#include "climpanel/csv.hpp"
#include "climpanel/localproj.hpp"

namespace climpanel {

#ifndef CLIMPANEL_VERSION
#define CLIMPANEL_VERSION "0.0.0"
#endif

inline constexpr const char* kVersion = CLIMPANEL_VERSION;

struct DataConfig {
    std::string climate;  // regional (or unit-level, see `weights`) climate panel
    std::string prices;   // regional price indices
    std::string weights;  // optional unit,region,weight file; climate rows are then units
    std::string region_column = "region";
    std::string year_column = "year";
    std::string quarter_column = "quarter";
    std::string missing;
    std::string temperature = "temp";
    std::string precipitation = "precip";
    std::string temperature_unit = "degC";
    std::string precipitation_unit = "mm";
    std::string price_unit = "index";
};

struct ClimateConfig {
    std::vector<int> ms{20, 30, 40};
    NormMethod norm = NormMethod::SameQuarter;
    ShockForm form = ShockForm::SignConditioned;
};

struct LpConfig {
    std::vector<std::string> outcomes;
    /// Shock variable names; "{m}" becomes `m`, "{t}" and "{p}" the temperature and precipitation names.
    std::vector<std::string> shocks{"{t}_winter_cold_m{m}", "{t}_spring_hot_m{m}", "{t}_summer_hot_m{m}",
                                    "{p}_anom_m{m}_pos", "{p}_anom_m{m}_neg"};
    int m = 30;
    std::vector<int> horizons{0, 1, 2, 3, 4, 5, 6, 7, 8};
    int lags = 8;
    double level = 0.90;
    int bandwidth = -1;
    bool small_sample = true;
    Quantile quantile;
    FixedEffects fixed_effects = FixedEffects::Both;
    std::optional<QuarterRange> sample;
};

struct ArdlConfig {
    std::vector<std::string> outcomes;
    std::vector<int> ms;  // empty: the climate windows
    int p = 4;
    CovarianceKind covariance = CovarianceKind::Classical;
    int bandwidth = -1;
    bool small_sample = true;
    Quantile quantile;
    FixedEffects fixed_effects = FixedEffects::Region;
    std::optional<QuarterRange> sample;
};

struct StatsConfig {
    /// Panel variables; a dlog_/log_/d_ prefix on a price or climate name is computed on the fly.
    std::vector<std::string> variables;
    std::optional<QuarterRange> sample;
};

struct SimulateConfig {
    std::uint64_t seed = 1;
    int regions = 7;
};

struct RunConfig {
    std::filesystem::path base_dir{"."};
    DataConfig data;
    ClimateConfig climate;
    LpConfig lp;
    ArdlConfig ardl;
    StatsConfig stats;
    SimulateConfig simulate;
    std::string output_dir = "out";
    std::map<std::string, std::string> labels;  // display names for outcomes

    std::filesystem::path resolve(const std::string& p) const {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    }
    std::string label(const std::string& name) const {
        auto it = labels.find(name);
        return it == labels.end() ? name : it->second;
    }
    std::vector<int> ardl_ms() const { return ardl.ms.empty() ? climate.ms : ardl.ms; }
    std::string shock_name(const std::string& pattern) const;
    /// Canonical text of every effective setting; the basis of `hash()`.
    std::string canonical() const;
    std::uint64_t hash() const;
    std::string hash_hex() const;
};

// ---------------------------------------------------------------------------
// Value parsing helpers
// ---------------------------------------------------------------------------

namespace config_detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        auto t = std::string(csv::trim(item));
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

/// Drops a trailing "; ..." or "# ..." comment; the marker must follow whitespace or open the value.
inline std::string strip_inline_comment(const std::string& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if ((v[i] == ';' || v[i] == '#') && (i == 0 || v[i - 1] == ' ' || v[i - 1] == '\t'))
            return std::string(csv::trim(std::string_view(v).substr(0, i)));
    return std::string(csv::trim(v));
}

inline int to_int(const std::string& key, const std::string& v) {
    auto r = csv::parse_int(v);
    if (!r || *r < std::numeric_limits<int>::min() || *r > std::numeric_limits<int>::max())
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    return static_cast<int>(*r);
}

inline double to_double(const std::string& key, const std::string& v) {
    auto r = csv::parse_double(v);
    if (!r) throw ConfigError(key + ": expected a number, got '" + v + "'");
    return *r;
}

inline bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
    if (v == "false" || v == "no" || v == "off" || v == "0") return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

/// "0-8", "0,1,4" or a mix of both.
inline std::vector<int> to_int_list(const std::string& key, const std::string& v) {
    std::vector<int> out;
    for (const auto& item : split_list(v)) {
        auto dash = item.find('-', 1);
        if (dash == std::string::npos) {
            out.push_back(to_int(key, item));
        } else {
            int lo = to_int(key, std::string(csv::trim(item.substr(0, dash))));
            int hi = to_int(key, std::string(csv::trim(item.substr(dash + 1))));
            if (hi < lo) throw ConfigError(key + ": empty range '" + item + "'");
            for (int i = lo; i <= hi; ++i) out.push_back(i);
        }
    }
    return out;
}

inline std::vector<int> to_window_list(const std::string& key, const std::string& v) {
    auto ms = to_int_list(key, v);
    if (ms.empty()) throw ConfigError(key + ": at least one norm window is required");
    std::set<int> seen;
    for (int m : ms) {
        if (m < 1) throw ConfigError(key + ": norm window m must be >= 1, got " + std::to_string(m));
        if (!seen.insert(m).second) throw ConfigError(key + ": duplicate norm window " + std::to_string(m));
    }
    return ms;
}

inline FixedEffects to_fixed_effects(const std::string& key, const std::string& v) {
    if (v == "none") return FixedEffects::None;
    if (v == "region") return FixedEffects::Region;
    if (v == "time") return FixedEffects::Time;
    if (v == "both" || v == "region+time") return FixedEffects::Both;
    throw ConfigError(key + ": expected none|region|time|both, got '" + v + "'");
}

inline Quantile to_quantile(const std::string& key, const std::string& v) {
    if (v == "normal") return Quantile::normal();
    if (v == "t") return Quantile::student_t(0.0);
    throw ConfigError(key + ": expected normal|t, got '" + v + "'");
}

inline QuarterRange to_range(const std::string& key, const std::string& v) {
    try {
        auto r = QuarterRange::parse(v);
        if (r.empty()) throw ConfigError(key + ": empty window '" + v + "'");
        return r;
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(key + ": " + e.what());
    }
}

inline std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + xs[i];
    return out;
}

inline std::string join(const std::vector<int>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out;
}

}  // namespace config_detail

inline std::string RunConfig::shock_name(const std::string& pattern) const {
    std::string out;
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (pattern.compare(i, 3, "{m}") == 0) {
            out += std::to_string(lp.m);
            i += 2;
        } else if (pattern.compare(i, 3, "{t}") == 0) {
            out += data.temperature;
            i += 2;
        } else if (pattern.compare(i, 3, "{p}") == 0) {
            out += data.precipitation;
            i += 2;
        } else {
            out += pattern[i];
        }
    }
    return out;
}

inline std::string RunConfig::canonical() const {
    using config_detail::join;
    std::ostringstream s;
    auto range = [](const std::optional<QuarterRange>& r) { return r ? r->str() : std::string("all"); };
    auto quant = [](const Quantile& q) { return q.kind == Quantile::Kind::Normal ? "normal" : "t"; };
    s << "data.climate=" << data.climate << '\n'
      << "data.prices=" << data.prices << '\n'
      << "data.weights=" << data.weights << '\n'
      << "data.columns=" << data.region_column << ',' << data.year_column << ',' << data.quarter_column << '\n'
      << "data.missing=" << data.missing << '\n'
      << "data.variables=" << data.temperature << ',' << data.precipitation << '\n'
      << "data.units=" << data.temperature_unit << ',' << data.precipitation_unit << ',' << data.price_unit << '\n'
      << "climate.m=" << join(climate.ms) << '\n'
      << "climate.norm=" << (climate.norm == NormMethod::SameQuarter ? "same_quarter" : "rolling") << '\n'
      << "climate.form=" << (climate.form == ShockForm::SignConditioned ? "sign" : "interaction") << '\n'
      << "lp.outcomes=" << join(lp.outcomes) << '\n'
      << "lp.shocks=" << join(lp.shocks) << '\n'
      << "lp.m=" << lp.m << '\n'
      << "lp.horizons=" << join(lp.horizons) << '\n'
      << "lp.lags=" << lp.lags << '\n'
      << "lp.level=" << csv::format_double(lp.level) << '\n'
      << "lp.bandwidth=" << lp.bandwidth << '\n'
      << "lp.small_sample=" << lp.small_sample << '\n'
      << "lp.quantile=" << quant(lp.quantile) << '\n'
      << "lp.fixed_effects=" << to_string(lp.fixed_effects) << '\n'
      << "lp.sample=" << range(lp.sample) << '\n'
      << "ardl.outcomes=" << join(ardl.outcomes) << '\n'
      << "ardl.m=" << join(ardl_ms()) << '\n'
      << "ardl.p=" << ardl.p << '\n'
      << "ardl.covariance=" << (ardl.covariance == CovarianceKind::Classical ? "classical" : "driscoll-kraay") << '\n'
      << "ardl.bandwidth=" << ardl.bandwidth << '\n'
      << "ardl.small_sample=" << ardl.small_sample << '\n'
      << "ardl.quantile=" << quant(ardl.quantile) << '\n'
      << "ardl.fixed_effects=" << to_string(ardl.fixed_effects) << '\n'
      << "ardl.sample=" << range(ardl.sample) << '\n'
      << "stats.variables=" << join(stats.variables) << '\n'
      << "stats.sample=" << range(stats.sample) << '\n'
      << "simulate.seed=" << simulate.seed << '\n'
      << "simulate.regions=" << simulate.regions << '\n';
    for (const auto& [k, v] : labels) s << "labels." << k << '=' << v << '\n';
    return s.str();
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t RunConfig::hash() const { return fnv1a(canonical()); }

inline std::string RunConfig::hash_hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash()));
    return buf;
}

/// Parses and validates a configuration. Relative paths resolve against `base_dir`.
inline RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = ".",
                              const std::string& source = "<config>") {
    namespace pt = boost::property_tree;
    using namespace config_detail;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }

    RunConfig cfg;
    cfg.base_dir = base_dir;
    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) throw ConfigError(source + ": key '" + section + "' outside any section");
        for (const auto& [key, node] : body) {
            const std::string v = strip_inline_comment(node.data());
            const std::string where = source + ": [" + section + "] " + key;
            bool known = true;
            if (section == "data") {
                auto& d = cfg.data;
                if (key == "climate") d.climate = v;
                else if (key == "prices") d.prices = v;
                else if (key == "weights") d.weights = v;
                else if (key == "region_column") d.region_column = v;
                else if (key == "year_column") d.year_column = v;
                else if (key == "quarter_column") d.quarter_column = v;
                else if (key == "missing") d.missing = v;
                else if (key == "temperature") d.temperature = v;
                else if (key == "precipitation") d.precipitation = v;
                else if (key == "temperature_unit") d.temperature_unit = v;
                else if (key == "precipitation_unit") d.precipitation_unit = v;
                else if (key == "price_unit") d.price_unit = v;
                else known = false;
            } else if (section == "climate") {
                auto& c = cfg.climate;
                if (key == "m") c.ms = to_window_list(where, v);
                else if (key == "norm") {
                    if (v == "same_quarter") c.norm = NormMethod::SameQuarter;
                    else if (v == "rolling") c.norm = NormMethod::Rolling;
                    else throw ConfigError(where + ": expected same_quarter|rolling, got '" + v + "'");
                } else if (key == "shock_form") {
                    if (v == "sign") c.form = ShockForm::SignConditioned;
                    else if (v == "interaction") c.form = ShockForm::Interaction;
                    else throw ConfigError(where + ": expected sign|interaction, got '" + v + "'");
                } else known = false;
            } else if (section == "lp") {
                auto& l = cfg.lp;
                if (key == "outcomes") l.outcomes = split_list(v);
                else if (key == "shocks") l.shocks = split_list(v);
                else if (key == "m") l.m = to_int(where, v);
                else if (key == "horizons") l.horizons = to_int_list(where, v);
                else if (key == "lags") l.lags = to_int(where, v);
                else if (key == "level") l.level = to_double(where, v);
                else if (key == "bandwidth") l.bandwidth = v == "auto" ? -1 : to_int(where, v);
                else if (key == "small_sample") l.small_sample = to_bool(where, v);
                else if (key == "quantile") l.quantile = to_quantile(where, v);
                else if (key == "fixed_effects") l.fixed_effects = to_fixed_effects(where, v);
                else if (key == "sample") l.sample = to_range(where, v);
                else known = false;
            } else if (section == "ardl") {
                auto& a = cfg.ardl;
                if (key == "outcomes") a.outcomes = split_list(v);
                else if (key == "m") a.ms = v.empty() ? std::vector<int>{} : to_window_list(where, v);
                else if (key == "p") a.p = to_int(where, v);
                else if (key == "covariance") {
                    if (v == "classical") a.covariance = CovarianceKind::Classical;
                    else if (v == "driscoll-kraay" || v == "dk") a.covariance = CovarianceKind::DriscollKraay;
                    else throw ConfigError(where + ": expected classical|driscoll-kraay, got '" + v + "'");
                } else if (key == "bandwidth") a.bandwidth = v == "auto" ? -1 : to_int(where, v);
                else if (key == "small_sample") a.small_sample = to_bool(where, v);
                else if (key == "quantile") a.quantile = to_quantile(where, v);
                else if (key == "fixed_effects") a.fixed_effects = to_fixed_effects(where, v);
                else if (key == "sample") a.sample = to_range(where, v);
                else known = false;
            } else if (section == "stats") {
                if (key == "variables") cfg.stats.variables = split_list(v);
                else if (key == "sample") cfg.stats.sample = to_range(where, v);
                else known = false;
            } else if (section == "output") {
                if (key == "dir") cfg.output_dir = v;
                else known = false;
            } else if (section == "simulate") {
                if (key == "seed") {
                    auto s = csv::parse_int(v);
                    if (!s || *s < 0) throw ConfigError(where + ": expected a nonnegative integer");
                    cfg.simulate.seed = static_cast<std::uint64_t>(*s);
                } else if (key == "regions") cfg.simulate.regions = to_int(where, v);
                else known = false;
            } else if (section == "labels") {
                cfg.labels[key] = v;
            } else {
                throw ConfigError(source + ": unknown section [" + section + "]");
            }
            if (!known) throw ConfigError(where + ": unknown key");
        }
    }
    return cfg;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    auto base = path.parent_path();
    return parse_config(in, base.empty() ? std::filesystem::path(".") : base, path.string());
}

/// Checks settings that do not depend on the data. `command` selects the sections in play.
inline void validate(const RunConfig& cfg, const std::string& command) {
    if (cfg.simulate.regions < 1) throw ConfigError("[simulate] regions must be >= 1");
    if (command == "simulate") return;
    if (cfg.output_dir.empty()) throw ConfigError("[output] dir is empty");
    if (cfg.data.climate.empty() && command != "stats")
        throw ConfigError("[data] climate is required for '" + command + "'");
    for (int m : cfg.climate.ms)
        if (m < 1) throw ConfigError("[climate] m must be >= 1");
    if (command == "lp") {
        if (cfg.data.prices.empty()) throw ConfigError("[data] prices is required for 'lp'");
        if (cfg.lp.outcomes.empty()) throw ConfigError("[lp] outcomes is empty");
        if (cfg.lp.shocks.empty()) throw ConfigError("[lp] shocks is empty");
        if (cfg.lp.horizons.empty()) throw ConfigError("[lp] horizons is empty");
        if (cfg.lp.m < 1) throw ConfigError("[lp] m must be >= 1");
        if (cfg.lp.bandwidth < -1) throw ConfigError("[lp] bandwidth must be auto or >= 0");
        LPSpec probe;
        probe.horizons = cfg.lp.horizons;
        probe.lags = cfg.lp.lags;
        probe.level = cfg.lp.level;
        validate(probe);
    } else if (command == "ardl") {
        if (cfg.data.prices.empty()) throw ConfigError("[data] prices is required for 'ardl'");
        if (cfg.ardl.outcomes.empty()) throw ConfigError("[ardl] outcomes is empty");
        if (cfg.ardl.p < 0) throw ConfigError("[ardl] p must be >= 0");
        if (cfg.ardl.bandwidth < -1) throw ConfigError("[ardl] bandwidth must be auto or >= 0");
    } else if (command == "stats") {
        if (cfg.stats.variables.empty()) throw ConfigError("[stats] variables is empty");
        if (cfg.data.climate.empty() && cfg.data.prices.empty())
            throw ConfigError("[data] needs climate or prices for 'stats'");
    }
}

}  // namespace climpanel
