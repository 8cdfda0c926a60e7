#pragma once

// Table and CSV emitters. Every file starts with '#' comment lines naming the toolkit
// version, the config hash and the column units.

#include <algorithm>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "climpanel/ardl.hpp"
#include "climpanel/csv.hpp"
#include "climpanel/dataset.hpp"
#include "climpanel/localproj.hpp"

namespace climpanel::report {

using Units = std::vector<std::pair<std::string, std::string>>;

struct Header {
    std::string version;
    std::string config_hash;
    std::string title;
    Units units;
};

inline void write_header(std::ostream& out, const Header& h) {
    out << "# climpanel " << h.version << '\n';
    out << "# config fnv1a64:" << h.config_hash << '\n';
    if (!h.title.empty()) out << "# " << h.title << '\n';
    if (!h.units.empty()) {
        out << "# units:";
        for (std::size_t i = 0; i < h.units.size(); ++i)
            out << (i ? "; " : " ") << h.units[i].first << '=' << h.units[i].second;
        out << '\n';
    }
}

/// Identifier safe for a file name: anything outside [A-Za-z0-9_.-] becomes '_'.
inline std::string file_token(const std::string& s) {
    std::string out = s;
    for (char& c : out) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
                        c == '-' || c == '.';
        if (!ok) c = '_';
    }
    return out;
}

inline std::string pad_right(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }
inline std::string pad_left(const std::string& s, std::size_t w) { return s.size() >= w ? s : std::string(w - s.size(), ' ') + s; }

/// "0.0273 **" style cell.
inline std::string starred(double v, const std::string& stars, int decimals) {
    std::string s = csv::format_fixed(v, decimals);
    return stars.empty() ? s : s + ' ' + stars;
}

inline std::string in_parens(double se, int decimals) { return '(' + csv::format_fixed(se, decimals) + ')'; }

/// Lays out rows of cells as fixed-width text; column 0 is left aligned, the rest right aligned.
inline std::string render_grid(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows) {
        if (width.size() < r.size()) width.resize(r.size(), 0);
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    }
    std::ostringstream out;
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (c == 0) line += pad_right(r[c], width[c]);
            else line += "  " + pad_left(r[c], width[c]);
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Local projections
// ---------------------------------------------------------------------------

/// One row per requested horizon; failed horizons carry missing values.
inline void write_irf_csv(std::ostream& out, const IrfResult& irf, const std::vector<int>& horizons,
                          const Header& header) {
    write_header(out, header);
    out << "horizon,estimate,se,lo,hi,z,p_value,stars,nobs,bandwidth\n";
    for (int h : horizons) {
        auto it = std::find_if(irf.responses.begin(), irf.responses.end(), [&](const auto& r) { return r.horizon == h; });
        if (it == irf.responses.end()) {
            out << h << ",NA,NA,NA,NA,NA,NA,,,\n";
            continue;
        }
        const auto& r = *it;
        out << h << ',' << csv::format_double(r.estimate, "NA") << ',' << csv::format_double(r.se, "NA") << ','
            << csv::format_double(r.band.lo, "NA") << ',' << csv::format_double(r.band.hi, "NA") << ','
            << csv::format_double(r.estimate / r.se, "NA") << ',' << csv::format_double(r.p_value, "NA") << ','
            << r.stars << ',' << r.nobs << ',' << r.bandwidth << '\n';
    }
}

/// Long format across all (shock, outcome) cells, for plotting.
inline void write_irf_long(std::ostream& out, const std::vector<IrfResult>& irfs, const Header& header) {
    write_header(out, header);
    out << "shock,outcome,horizon,estimate,se,lo,hi,stars\n";
    for (const auto& irf : irfs)
        for (const auto& r : irf.responses)
            out << csv::quote_if_needed(irf.shock) << ',' << csv::quote_if_needed(irf.outcome) << ',' << r.horizon << ','
                << csv::format_double(r.estimate, "NA") << ',' << csv::format_double(r.se, "NA") << ','
                << csv::format_double(r.band.lo, "NA") << ',' << csv::format_double(r.band.hi, "NA") << ',' << r.stars
                << '\n';
}

/// Shock blocks stacked vertically; within a block one row per outcome with the
/// standard error in parentheses underneath; one column per horizon.
inline std::string lp_text_table(const std::vector<IrfResult>& irfs, const std::vector<int>& horizons,
                                 const std::map<std::string, std::string>& labels = {}, int decimals = 3,
                                 int se_decimals = 4) {
    auto label = [&](const std::string& s) {
        auto it = labels.find(s);
        return it == labels.end() ? s : it->second;
    };
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"shock", "outcome"};
    for (int h : horizons) head.push_back("h=" + std::to_string(h));
    rows.push_back(head);
    std::string current;
    for (const auto& irf : irfs) {
        std::vector<std::string> est{irf.shock == current ? "" : label(irf.shock), label(irf.outcome)};
        std::vector<std::string> se{"", ""};
        current = irf.shock;
        for (int h : horizons) {
            auto it = std::find_if(irf.responses.begin(), irf.responses.end(), [&](const auto& r) { return r.horizon == h; });
            if (it == irf.responses.end()) {
                est.push_back("NA");
                se.push_back("");
            } else {
                est.push_back(starred(it->estimate, it->stars, decimals));
                se.push_back(in_parens(it->se, se_decimals));
            }
        }
        rows.push_back(est);
        rows.push_back(se);
    }
    return render_grid(rows);
}

// ---------------------------------------------------------------------------
// ARDL
// ---------------------------------------------------------------------------

/// Long-run rows for one outcome: one row per (term, m).
inline void write_long_run_csv(std::ostream& out, const std::vector<SuiteCell>& cells,
                               const std::vector<std::string>& term_labels, const Header& header) {
    write_header(out, header);
    out << "outcome,m,term,variable,estimate,se,z,p_value,stars,short_run_sum,annualized,nobs,p,covariance\n";
    for (const auto& cell : cells) {
        if (!cell.result) continue;
        const auto& t = cell.result->table;
        auto emit = [&](const std::string& term, const LongRunEffect& e) {
            out << csv::quote_if_needed(cell.outcome) << ',' << cell.m << ',' << csv::quote_if_needed(term) << ','
                << csv::quote_if_needed(e.name) << ',' << csv::format_double(e.estimate, "NA") << ','
                << csv::format_double(e.se, "NA") << ',' << csv::format_double(e.z, "NA") << ','
                << csv::format_double(e.p_value, "NA") << ',' << e.stars << ','
                << csv::format_double(e.short_run_sum, "NA") << ',' << csv::format_double(e.annualized, "NA") << ','
                << t.nobs << ',' << t.p << ',' << t.covariance << '\n';
        };
        for (std::size_t k = 0; k < t.effects.size(); ++k)
            emit(k < term_labels.size() ? term_labels[k] : t.effects[k].name, t.effects[k]);
        emit("phi", t.phi);
    }
}

/// Outcome blocks stacked vertically; rows theta per block variable then phi, standard
/// errors in parentheses underneath; one column per norm window.
inline std::string ardl_text_table(const std::vector<SuiteCell>& cells, const std::vector<std::string>& term_labels,
                                   const std::map<std::string, std::string>& labels = {}, int decimals = 4) {
    auto label = [&](const std::string& s) {
        auto it = labels.find(s);
        return it == labels.end() ? s : it->second;
    };
    std::vector<std::string> outcomes;
    std::vector<int> ms;
    for (const auto& c : cells) {
        if (std::find(outcomes.begin(), outcomes.end(), c.outcome) == outcomes.end()) outcomes.push_back(c.outcome);
        if (std::find(ms.begin(), ms.end(), c.m) == ms.end()) ms.push_back(c.m);
    }
    std::sort(ms.begin(), ms.end());

    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> head{"outcome", "term"};
    for (int m : ms) head.push_back(std::to_string(m) + " Year MA");
    rows.push_back(head);

    for (const auto& outcome : outcomes) {
        auto cell_for = [&](int m) -> const SuiteCell* {
            for (const auto& c : cells)
                if (c.outcome == outcome && c.m == m) return &c;
            return nullptr;
        };
        std::size_t n_terms = term_labels.size();
        for (int m : ms)
            if (const auto* c = cell_for(m); c && c->result) n_terms = std::max(n_terms, c->result->table.effects.size());
        bool first = true;
        for (std::size_t k = 0; k <= n_terms; ++k) {
            const bool is_phi = k == n_terms;
            std::string term = is_phi ? "phi" : (k < term_labels.size() ? "theta " + term_labels[k] : "theta " + std::to_string(k));
            std::vector<std::string> est{first ? label(outcome) : "", term};
            std::vector<std::string> se{"", ""};
            first = false;
            for (int m : ms) {
                const auto* c = cell_for(m);
                if (c == nullptr || !c->result || (!is_phi && k >= c->result->table.effects.size())) {
                    est.push_back("NA");
                    se.push_back("");
                    continue;
                }
                const auto& e = is_phi ? c->result->table.phi : c->result->table.effects[k];
                est.push_back(starred(e.estimate, e.stars, decimals));
                se.push_back(in_parens(e.se, decimals));
            }
            rows.push_back(est);
            rows.push_back(se);
        }
    }
    return render_grid(rows);
}

/// theta x 2/(m+1) for every long-run term, full precision and rounded to `decimals`.
inline void write_annualized_csv(std::ostream& out, const std::vector<SuiteCell>& cells,
                                 const std::vector<std::string>& term_labels, const Header& header, int decimals = 4) {
    write_header(out, header);
    out << "outcome,m,term,variable,theta,annualized,annualized_rounded\n";
    for (const auto& cell : cells) {
        if (!cell.result) continue;
        const auto& effects = cell.result->table.effects;
        for (std::size_t k = 0; k < effects.size(); ++k) {
            const auto& e = effects[k];
            out << csv::quote_if_needed(cell.outcome) << ',' << cell.m << ','
                << csv::quote_if_needed(k < term_labels.size() ? term_labels[k] : e.name) << ','
                << csv::quote_if_needed(e.name) << ',' << csv::format_double(e.estimate, "NA") << ','
                << csv::format_double(e.annualized, "NA") << ',' << csv::format_fixed(e.annualized, decimals) << '\n';
        }
    }
}

inline std::string annualized_text(const std::vector<SuiteCell>& cells, const std::vector<std::string>& term_labels,
                                   const std::map<std::string, std::string>& labels = {}, int decimals = 4) {
    auto label = [&](const std::string& s) {
        auto it = labels.find(s);
        return it == labels.end() ? s : it->second;
    };
    std::vector<std::vector<std::string>> rows{{"outcome", "m", "term", "theta", "annualized"}};
    for (const auto& cell : cells) {
        if (!cell.result) continue;
        const auto& effects = cell.result->table.effects;
        for (std::size_t k = 0; k < effects.size(); ++k) {
            rows.push_back({label(cell.outcome), std::to_string(cell.m), k < term_labels.size() ? term_labels[k] : effects[k].name,
                            starred(effects[k].estimate, effects[k].stars, decimals),
                            csv::format_fixed(effects[k].annualized, decimals)});
        }
    }
    std::ostringstream out;
    out << "Annualized long-run effects: theta x 2/(m+1)\n\n" << render_grid(rows) << '\n';
    out << "Note: annualized values are rounded to " << decimals << " decimals, so 0.0017613 prints as "
        << csv::format_fixed(0.0017613, decimals) << "; truncation would give "
        << csv::format_fixed(0.0017, decimals) << ". Full precision is in annualized.csv.\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// Summary statistics
// ---------------------------------------------------------------------------

inline void write_stats_header(std::ostream& out) { out << "variable,region,n,min,q1,median,q3,max,mean,sd\n"; }

inline void write_stats_rows(std::ostream& out, const std::string& var, const std::vector<RegionSummary>& rows) {
    for (const auto& s : rows)
        out << csv::quote_if_needed(var) << ',' << csv::quote_if_needed(s.region) << ',' << s.n << ','
            << csv::format_double(s.min, "NA") << ',' << csv::format_double(s.q1, "NA") << ','
            << csv::format_double(s.median, "NA") << ',' << csv::format_double(s.q3, "NA") << ','
            << csv::format_double(s.max, "NA") << ',' << csv::format_double(s.mean, "NA") << ','
            << csv::format_double(s.sd, "NA") << '\n';
}

// ---------------------------------------------------------------------------
// Run report
// ---------------------------------------------------------------------------

struct RunReport {
    std::string command;
    std::string config_hash;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::string> notes;
    std::vector<std::string> failures;
    std::vector<std::string> warnings;
    int cells = 0;
    int failed_cells = 0;

    std::string render(const std::string& version) const {
        std::ostringstream out;
        out << "climpanel " << version << " run report\n";
        out << "command: " << command << '\n';
        out << "config: fnv1a64:" << config_hash << '\n';
        out << "cells: " << cells << " run, " << failed_cells << " failed\n";
        auto section = [&](const char* name, const std::vector<std::string>& lines) {
            out << '\n' << name << " (" << lines.size() << ")\n";
            for (const auto& l : lines) out << "  " << l << '\n';
        };
        section("inputs", inputs);
        section("outputs", outputs);
        section("notes", notes);
        section("failures", failures);
        section("warnings", warnings);
        return out.str();
    }
};

}  // namespace climpanel::report
