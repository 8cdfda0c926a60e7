#pragma once

// Pipeline commands behind the climpanel executable. Each cmd_* writes into `out_dir`
// and returns a process exit code.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "climpanel/ardl.hpp"
#include "climpanel/climate.hpp"
#include "climpanel/config.hpp"
#include "climpanel/dataset.hpp"
#include "climpanel/localproj.hpp"
#include "climpanel/report.hpp"
#include "climpanel/simulate.hpp"

namespace climpanel::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kEstimation = 3 };

namespace fs = std::filesystem;

/// Output sink shared by the commands: creates directories and records what was written.
class Writer {
public:
    Writer(fs::path root, report::RunReport& rep) : root_(std::move(root)), report_(rep) {}

    void write(const fs::path& rel, const std::string& content) {
        const fs::path path = root_ / rel;
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        out << content;
        if (!out) throw ConfigError("write failed for '" + path.string() + "'");
        report_.outputs.push_back(rel.generic_string());
    }

    const fs::path& root() const { return root_; }

private:
    fs::path root_;
    report::RunReport& report_;
};

// ---------------------------------------------------------------------------
// Inputs
// ---------------------------------------------------------------------------

inline PanelSchema schema_for(const RunConfig& cfg, std::vector<std::string> values = {},
                              std::map<std::string, std::string> units = {}) {
    PanelSchema s;
    s.region_column = cfg.data.region_column;
    s.year_column = cfg.data.year_column;
    s.quarter_column = cfg.data.quarter_column;
    s.missing_token = cfg.data.missing;
    s.value_columns = std::move(values);
    s.units = std::move(units);
    return s;
}

/// unit,region,weight rows.
inline std::vector<UnitWeight> read_unit_weights(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open weights file '" + path.string() + "'");
    std::string line;
    std::size_t lineno = 0;
    if (!csv::next_data_line(in, line, lineno)) throw SchemaError(path.string() + ": empty weights file");
    auto header = csv::split_record(line);
    auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (csv::trim(header[i]) == name) return i;
        throw SchemaError(path.string() + ": weights file needs a '" + name + "' column");
    };
    const auto cu = col("unit"), cr = col("region"), cw = col("weight");
    std::vector<UnitWeight> out;
    while (csv::next_data_line(in, line, lineno)) {
        auto f = csv::split_record(line);
        if (f.size() != header.size())
            throw SchemaError(path.string() + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(header.size()) + " fields, found " + std::to_string(f.size()));
        auto w = csv::parse_double(f[cw]);
        if (!w) throw SchemaError(path.string() + ":" + std::to_string(lineno) + ": bad weight '" + f[cw] + "'");
        out.push_back({std::string(csv::trim(f[cu])), std::string(csv::trim(f[cr])), *w});
    }
    return out;
}

inline PanelDataset load_climate(const RunConfig& cfg, report::RunReport& rep) {
    const auto path = cfg.resolve(cfg.data.climate);
    auto ds = load_panel(path.string(), schema_for(cfg, {cfg.data.temperature, cfg.data.precipitation},
                                                   {{cfg.data.temperature, cfg.data.temperature_unit},
                                                    {cfg.data.precipitation, cfg.data.precipitation_unit}}));
    rep.inputs.push_back("climate " + path.generic_string() + " (" + std::to_string(ds.n_regions()) +
                         (cfg.data.weights.empty() ? " regions x " : " units x ") +
                         ds.range().str() + ")");
    if (!cfg.data.weights.empty()) {
        const auto wpath = cfg.resolve(cfg.data.weights);
        auto weights = read_unit_weights(wpath);
        ds = weighted_aggregate(ds, weights, {cfg.data.temperature, cfg.data.precipitation});
        rep.inputs.push_back("weights " + wpath.generic_string() + " (" + std::to_string(weights.size()) +
                             " units into " + std::to_string(ds.n_regions()) + " regions)");
    }
    return ds;
}

inline PanelDataset load_prices(const RunConfig& cfg, const std::vector<std::string>& outcomes,
                                report::RunReport& rep) {
    const auto path = cfg.resolve(cfg.data.prices);
    std::map<std::string, std::string> units;
    for (const auto& o : outcomes) units[o] = cfg.data.price_unit;
    auto ds = load_panel(path.string(), schema_for(cfg, {}, units));
    for (const auto& o : outcomes)
        if (!ds.has(o)) throw ConfigError("outcome '" + o + "' is not a column of " + path.generic_string());
    rep.inputs.push_back("prices " + path.generic_string() + " (" + std::to_string(ds.n_regions()) + " regions x " +
                         ds.range().str() + ")");
    return ds;
}

inline ClimateOptions temperature_options(const RunConfig& cfg) {
    return {Polarity::Hot, Polarity::Cold, kNorthernSeasons, cfg.climate.form};
}
inline ClimateOptions precipitation_options(const RunConfig& cfg) {
    return {Polarity::Wet, Polarity::Dry, kNorthernSeasons, cfg.climate.form};
}

/// Adds every anomaly-derived series of both climate variables for each window.
inline PanelDataset with_climate_series(const RunConfig& cfg, PanelDataset ds, const std::vector<int>& ms) {
    for (int m : ms) {
        NormParams params(m, 4, cfg.climate.norm);
        ds = add_climate_series(ds, cfg.data.temperature, params, temperature_options(cfg));
        ds = add_climate_series(ds, cfg.data.precipitation, params, precipitation_options(cfg));
    }
    return ds;
}

/// Price panel restricted to the estimation window, with the requested climate series
/// copied in. Leads and lags are later taken from inside this window only.
inline PanelDataset estimation_panel(const RunConfig& cfg, const PanelDataset& climate, const PanelDataset& prices,
                                     const std::optional<QuarterRange>& sample, const std::vector<int>& ms,
                                     const std::vector<std::string>& climate_vars, report::RunReport& rep) {
    QuarterRange window = sample ? *sample : prices.range();
    window.first = std::max({window.first, prices.start(), climate.start()});
    window.last = std::min({window.last, prices.end(), climate.end()});
    if (window.empty())
        throw EmptyPanelError("estimation window " + (sample ? sample->str() : prices.range().str()) +
                              " does not overlap both the climate (" + climate.range().str() + ") and price (" +
                              prices.range().str() + ") panels");
    for (int m : ms) require_burn_in(climate, NormParams(m, 4, cfg.climate.norm), window);
    rep.notes.push_back("estimation window " + window.str());
    const auto with = with_climate_series(cfg, climate, ms);
    return align_series(subset(prices, window), with, climate_vars);
}

// ---------------------------------------------------------------------------
// Headers
// ---------------------------------------------------------------------------

inline report::Header header(const RunConfig& cfg, std::string title, report::Units units) {
    return {kVersion, cfg.hash_hex(), std::move(title), std::move(units)};
}

inline std::string finish_report(Writer& out, report::RunReport& rep, const std::string& command) {
    std::string name = "run_report_" + command + ".txt";
    rep.outputs.push_back(name);
    const std::string text = rep.render(kVersion);
    std::ofstream f(out.root() / name, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + (out.root() / name).string() + "'");
    f << text;
    return text;
}

// ---------------------------------------------------------------------------
// anomaly
// ---------------------------------------------------------------------------

inline int cmd_anomaly(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log = std::cerr) {
    validate(cfg, "anomaly");
    report::RunReport rep{"anomaly", cfg.hash_hex(), {}, {}, {}, {}, {}, 0, 0};
    Writer out(out_dir, rep);
    const PanelDataset climate = load_climate(cfg, rep);

    struct Var {
        std::string name;
        std::string unit;
        ClimateOptions opts;
    };
    const std::vector<Var> vars{{cfg.data.temperature, cfg.data.temperature_unit, temperature_options(cfg)},
                                {cfg.data.precipitation, cfg.data.precipitation_unit, precipitation_options(cfg)}};
    for (int m : cfg.climate.ms) {
        const NormParams params(m, 4, cfg.climate.norm);
        for (const auto& v : vars) {
            const PanelDataset ds = add_climate_series(climate, v.name, params, v.opts);
            std::vector<std::string> cols{anomaly_name(v.name, m), anomaly_pos_name(v.name, m), anomaly_neg_name(v.name, m)};
            for (auto season : kAllSeasons)
                for (auto pol : {v.opts.upper, v.opts.lower}) cols.push_back(seasonal_name(v.name, season, pol, m));

            const std::string stem = report::file_token(v.name) + "_m" + std::to_string(m);
            std::ostringstream series;
            auto h = header(cfg, "anomalies of " + v.name + ", m=" + std::to_string(m) + ", scale 2/(m+1)=" +
                                     csv::format_double(params.scale()),
                            {{"anomaly columns", v.unit + " (scaled deviation)"}});
            report::write_header(series, h);
            write_panel(series, ds, cols, {}, "NA");
            out.write(fs::path("anomaly") / (stem + ".csv"), series.str());

            const auto a = anomaly(climate, v.name, params);
            std::ostringstream audit;
            report::write_header(audit, header(cfg, "norm audit for " + v.name + ", m=" + std::to_string(m),
                                               {{"level", v.unit}, {"norm", v.unit}, {"scale", "1"}, {"anomaly", v.unit}}));
            audit << "region,year,quarter,level,norm,scale,anomaly\n";
            const Matrix& level = climate.series(v.name);
            for (std::size_t r = 0; r < climate.n_regions(); ++r) {
                for (std::size_t t = 0; t < climate.n_periods(); ++t) {
                    const auto q = climate.quarter_at(t);
                    const auto ri = static_cast<Eigen::Index>(r), ti = static_cast<Eigen::Index>(t);
                    audit << csv::quote_if_needed(climate.region(r)) << ',' << q.year << ',' << q.quarter << ','
                          << csv::format_double(level(ri, ti), "NA") << ',' << csv::format_double(a.norm(ri, ti), "NA")
                          << ',' << csv::format_double(params.scale()) << ','
                          << csv::format_double(a.values(ri, ti), "NA") << '\n';
                }
            }
            out.write(fs::path("anomaly") / (stem + "_audit.csv"), audit.str());
            rep.notes.push_back(v.name + " m=" + std::to_string(m) + ": first anomaly " +
                                first_anomaly_quarter(climate, params).str());
            ++rep.cells;
        }
    }
    finish_report(out, rep, "anomaly");
    log << "anomaly: wrote " << rep.outputs.size() << " files to " << out_dir.generic_string() << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// lp
// ---------------------------------------------------------------------------

inline int cmd_lp(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log = std::cerr) {
    validate(cfg, "lp");
    report::RunReport rep{"lp", cfg.hash_hex(), {}, {}, {}, {}, {}, 0, 0};
    Writer out(out_dir, rep);
    const PanelDataset climate = load_climate(cfg, rep);
    const PanelDataset prices = load_prices(cfg, cfg.lp.outcomes, rep);

    std::vector<std::string> shocks;
    for (const auto& pattern : cfg.lp.shocks) shocks.push_back(cfg.shock_name(pattern));
    const PanelDataset probe = with_climate_series(cfg, climate, {cfg.lp.m});
    for (const auto& s : shocks)
        if (!probe.has(s)) throw ConfigError("[lp] shock '" + s + "' is not a climate series for m=" + std::to_string(cfg.lp.m));
    const PanelDataset ds = estimation_panel(cfg, climate, prices, cfg.lp.sample, {cfg.lp.m}, shocks, rep);

    std::vector<IrfResult> irfs;
    for (const auto& shock : shocks) {
        for (const auto& outcome : cfg.lp.outcomes) {
            LPSpec spec;
            spec.outcome = outcome;
            spec.shock = shock;
            spec.horizons = cfg.lp.horizons;
            spec.lags = cfg.lp.lags;
            spec.fixed_effects = cfg.lp.fixed_effects;
            spec.hac = {cfg.lp.bandwidth, cfg.lp.small_sample};
            spec.level = cfg.lp.level;
            spec.quantile = cfg.lp.quantile;
            ++rep.cells;
            IrfResult irf = estimate_irf(ds, spec);
            for (const auto& f : irf.failures)
                rep.failures.push_back(shock + " -> " + outcome + " h=" + std::to_string(f.horizon) + ": " + f.error);
            if (irf.responses.empty()) ++rep.failed_cells;

            std::ostringstream csvout;
            report::write_irf_csv(csvout, irf, spec.horizons,
                                  header(cfg, "cumulative response of log " + outcome + " to " + shock + ", " +
                                                  csv::format_double(spec.level * 100) + "% Driscoll-Kraay bands",
                                         {{"horizon", "quarters"},
                                          {"estimate/se/lo/hi", "log points per unit of " + shock + " (" +
                                                                    ds.unit(shock) + ")"},
                                          {"z", "1"},
                                          {"nobs", "region-quarters"},
                                          {"bandwidth", "quarters"}}));
            out.write(fs::path("lp") / ("irf_" + report::file_token(shock) + "__" + report::file_token(outcome) + ".csv"),
                      csvout.str());
            irfs.push_back(std::move(irf));
        }
    }

    std::ostringstream long_out;
    report::write_irf_long(long_out, irfs,
                           header(cfg, "impulse responses, long format", {{"horizon", "quarters"}, {"estimate/se/lo/hi", "log points per shock unit"}}));
    out.write(fs::path("lp") / "irf_long.csv", long_out.str());

    std::ostringstream table;
    table << "Cumulative responses of log prices to one-unit climate shocks (m=" << cfg.lp.m << ")\n"
          << "Driscoll-Kraay standard errors in parentheses; *** 1%, ** 5%, * 10%.\n\n"
          << report::lp_text_table(irfs, cfg.lp.horizons, cfg.labels);
    out.write(fs::path("lp") / "lp_table.txt", table.str());

    finish_report(out, rep, "lp");
    log << "lp: " << rep.cells - rep.failed_cells << " of " << rep.cells << " cells estimated\n";
    return rep.cells > 0 && rep.failed_cells == rep.cells ? kEstimation : kOk;
}

// ---------------------------------------------------------------------------
// ardl
// ---------------------------------------------------------------------------

inline std::vector<std::string> ardl_term_labels() { return {"T+", "T-", "P+", "P-"}; }

inline int cmd_ardl(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log = std::cerr) {
    validate(cfg, "ardl");
    report::RunReport rep{"ardl", cfg.hash_hex(), {}, {}, {}, {}, {}, 0, 0};
    Writer out(out_dir, rep);
    const PanelDataset climate = load_climate(cfg, rep);
    const PanelDataset prices = load_prices(cfg, cfg.ardl.outcomes, rep);
    const std::vector<int> ms = cfg.ardl_ms();

    std::vector<std::string> block_vars;
    for (int m : ms)
        for (auto& v : signed_block(cfg.data.temperature, cfg.data.precipitation, m)) block_vars.push_back(v);
    const PanelDataset ds = estimation_panel(cfg, climate, prices, cfg.ardl.sample, ms, block_vars, rep);

    ARDLSpec base;
    base.form = OutcomeForm::Level;
    base.p = cfg.ardl.p;
    base.fixed_effects = cfg.ardl.fixed_effects;
    base.covariance = cfg.ardl.covariance;
    base.hac = {cfg.ardl.bandwidth, cfg.ardl.small_sample};
    base.quantile = cfg.ardl.quantile;
    auto cells = ardl_suite(ds, cfg.ardl.outcomes, ms, base, [&](int m) {
        return signed_block(cfg.data.temperature, cfg.data.precipitation, m);
    });

    for (const auto& c : cells) {
        ++rep.cells;
        if (!c.result) {
            ++rep.failed_cells;
            rep.failures.push_back(c.outcome + " m=" + std::to_string(c.m) + ": " + c.error);
        } else {
            for (const auto& w : c.result->fit.warnings) rep.warnings.push_back(c.outcome + " m=" + std::to_string(c.m) + ": " + w);
        }
    }
    const auto terms = ardl_term_labels();
    const report::Units units{{"estimate/se", "log points per unit of anomaly (T: " + cfg.data.temperature_unit +
                                                  ", P: " + cfg.data.precipitation_unit + ")"},
                              {"phi", "1"},
                              {"nobs", "region-quarters"}};

    for (const auto& outcome : cfg.ardl.outcomes) {
        std::vector<SuiteCell> mine;
        for (const auto& c : cells)
            if (c.outcome == outcome) mine.push_back(c);
        std::ostringstream o;
        report::write_long_run_csv(o, mine, terms, header(cfg, "long-run effects for " + outcome, units));
        out.write(fs::path("ardl") / ("long_run_" + report::file_token(outcome) + ".csv"), o.str());
    }
    std::ostringstream all;
    report::write_long_run_csv(all, cells, terms, header(cfg, "long-run effects, all outcomes", units));
    out.write(fs::path("ardl") / "long_run.csv", all.str());

    std::ostringstream table;
    table << "Long-run effects of temperature and precipitation anomalies (ARDL, p=" << cfg.ardl.p << ", "
          << (cfg.ardl.covariance == CovarianceKind::Classical ? "classical" : "Driscoll-Kraay")
          << " standard errors in parentheses)\n"
          << "*** 1%, ** 5%, * 10%. T in " << cfg.data.temperature_unit << ", P in " << cfg.data.precipitation_unit
          << ".\n\n"
          << report::ardl_text_table(cells, terms, cfg.labels);
    out.write(fs::path("ardl") / "long_run_table.txt", table.str());

    std::ostringstream ann;
    report::write_annualized_csv(ann, cells, terms,
                                 header(cfg, "annualized long-run effects theta*2/(m+1)",
                                        {{"theta/annualized", "log points per unit of anomaly"}}));
    out.write(fs::path("ardl") / "annualized.csv", ann.str());
    out.write(fs::path("ardl") / "annualized.txt", report::annualized_text(cells, terms, cfg.labels));

    finish_report(out, rep, "ardl");
    log << "ardl: " << rep.cells - rep.failed_cells << " of " << rep.cells << " cells estimated\n";
    return rep.cells > 0 && rep.failed_cells == rep.cells ? kEstimation : kOk;
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

/// Finds `name` in `ds`, deriving dlog_/log_/d_ transforms of an existing series on demand.
inline std::optional<PanelDataset> resolve_series(const PanelDataset& ds, const std::string& name) {
    if (ds.has(name)) return ds;
    struct Prefix {
        const char* text;
        TransformKind kind;
    };
    for (const auto& p : {Prefix{"dlog_", TransformKind::LogDiff}, Prefix{"log_", TransformKind::Log},
                          Prefix{"d_", TransformKind::Diff}}) {
        const std::string pre = p.text;
        if (name.rfind(pre, 0) == 0 && ds.has(name.substr(pre.size())))
            return transform(ds, {p.kind, name.substr(pre.size()), 0, name});
    }
    return std::nullopt;
}

inline int cmd_stats(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log = std::cerr) {
    validate(cfg, "stats");
    report::RunReport rep{"stats", cfg.hash_hex(), {}, {}, {}, {}, {}, 0, 0};
    Writer out(out_dir, rep);
    std::vector<PanelDataset> sources;
    if (!cfg.data.prices.empty()) sources.push_back(load_prices(cfg, {}, rep));
    std::optional<PanelDataset> climate;
    if (!cfg.data.climate.empty()) {
        climate = load_climate(cfg, rep);
        sources.push_back(*climate);
    }

    std::ostringstream summary, values;
    report::write_header(summary, header(cfg, "per-region distribution summaries", {{"values", "unit of each variable"}}));
    report::write_stats_header(summary);
    report::write_header(values, header(cfg, "values in long format", {{"value", "unit of each variable"}}));
    values << "variable,region,year,quarter,value\n";

    std::optional<PanelDataset> climate_full;
    for (const auto& var : cfg.stats.variables) {
        std::optional<PanelDataset> found;
        for (const auto& src : sources)
            if ((found = resolve_series(src, var))) break;
        if (!found && climate) {
            if (!climate_full) climate_full = with_climate_series(cfg, *climate, cfg.climate.ms);
            found = resolve_series(*climate_full, var);
        }
        if (!found) throw ConfigError("[stats] variable '" + var + "' is not available");
        PanelDataset ds = cfg.stats.sample ? subset(*found, {var}, *cfg.stats.sample) : *found;
        ++rep.cells;
        report::write_stats_rows(summary, var, summary_stats(ds, var));
        const Matrix& x = ds.series(var);
        for (std::size_t r = 0; r < ds.n_regions(); ++r)
            for (std::size_t t = 0; t < ds.n_periods(); ++t) {
                const double v = x(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t));
                if (is_missing(v)) continue;
                const auto q = ds.quarter_at(t);
                values << csv::quote_if_needed(var) << ',' << csv::quote_if_needed(ds.region(r)) << ',' << q.year << ','
                       << q.quarter << ',' << csv::format_double(v) << '\n';
            }
    }
    out.write(fs::path("stats") / "summary.csv", summary.str());
    out.write(fs::path("stats") / "values.csv", values.str());
    finish_report(out, rep, "stats");
    log << "stats: summarized " << rep.cells << " variables\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

/// Writes a synthetic climate panel, price panel and a ready-to-run config.
inline int cmd_simulate(const RunConfig& cfg, const fs::path& out_dir, std::ostream& log = std::cerr) {
    validate(cfg, "simulate");
    report::RunReport rep{"simulate", cfg.hash_hex(), {}, {}, {}, {}, {}, 0, 0};
    Writer out(out_dir, rep);
    sim::DemoDgp g;
    g.regions = cfg.simulate.regions;
    auto rng = sim::make_rng(cfg.simulate.seed);
    const PanelDataset ds = sim::simulate_demo(g, rng);
    rep.notes.push_back("seed " + std::to_string(cfg.simulate.seed) + ", " + std::to_string(g.regions) + " regions");
    rep.notes.push_back("prices load on the positive precipitation anomaly (m=" + std::to_string(g.m_effect) +
                        ") with coefficient " + csv::format_double(g.precip_effect) + " times an outcome loading");

    std::ostringstream climate;
    report::write_header(climate, header(cfg, "synthetic climate panel", {{"temp", "degC"}, {"precip", "mm"}}));
    write_panel(climate, ds, {"temp", "precip"}, {}, "NA");
    out.write("climate.csv", climate.str());

    const PanelDataset prices = subset(ds, sim::demo_outcomes(), {g.price_start, g.end});
    std::ostringstream p;
    report::write_header(p, header(cfg, "synthetic price indices", {{"cpi_*", "index"}}));
    write_panel(p, prices, sim::demo_outcomes(), {}, "NA");
    out.write("prices.csv", p.str());

    std::string outcomes;
    for (const auto& o : sim::demo_outcomes()) outcomes += (outcomes.empty() ? "" : ", ") + o;
    std::ostringstream ini;
    ini << "# synthetic run generated by 'climpanel simulate --seed " << cfg.simulate.seed << "'\n"
        << "[data]\nclimate = climate.csv\nprices = prices.csv\nmissing = NA\n\n"
        << "[climate]\nm = 20, 30, 40\n\n"
        << "[lp]\noutcomes = " << outcomes << "\nm = 30\nhorizons = 0-8\nlags = 8\nlevel = 0.90\nsample = 2002Q1:2023Q4\n\n"
        << "[ardl]\noutcomes = " << outcomes << "\np = 4\ncovariance = classical\nsample = 2002Q1:2023Q4\n\n"
        << "[stats]\nvariables = dlog_cpi_all, dlog_cpi_food, temp, precip\n\n"
        << "[output]\ndir = out\n\n"
        << "[labels]\ncpi_all = All items\ncpi_food = Food\ncpi_nonfood = Non food\ncpi_services = Services\n"
        << "cpi_agri = Agriculture\ncpi_energy = Energy\n"
        << "temp_winter_cold_m30 = Cold winter\ntemp_spring_hot_m30 = Hot spring\ntemp_summer_hot_m30 = Hot summer\n"
        << "precip_anom_m30_pos = P+\nprecip_anom_m30_neg = P-\n";
    out.write("config.ini", ini.str());
    rep.cells = 1;
    finish_report(out, rep, "simulate");
    log << "simulate: wrote synthetic panels to " << out_dir.generic_string() << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

/// Runs one subcommand and maps toolkit errors onto exit codes.
inline int run_command(const std::string& command, const RunConfig& cfg, const fs::path& out_dir,
                       std::ostream& log = std::cerr) {
    try {
        if (command == "anomaly") return cmd_anomaly(cfg, out_dir, log);
        if (command == "lp") return cmd_lp(cfg, out_dir, log);
        if (command == "ardl") return cmd_ardl(cfg, out_dir, log);
        if (command == "stats") return cmd_stats(cfg, out_dir, log);
        if (command == "simulate") return cmd_simulate(cfg, out_dir, log);
        log << "error: unknown command '" << command << "'\n";
        return kUsage;
    } catch (const ConfigError& e) {
        log << "configuration error: " << e.what() << '\n';
        return kUsage;
    } catch (const DataError& e) {
        log << "data error: " << e.what() << '\n';
        return kData;
    } catch (const EstimationError& e) {
        log << "estimation error: " << e.what() << '\n';
        return kEstimation;
    } catch (const fs::filesystem_error& e) {
        log << "file error: " << e.what() << '\n';
        return kUsage;
    }
}

}  // namespace climpanel::cli
