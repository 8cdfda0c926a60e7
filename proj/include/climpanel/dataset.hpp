#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "climpanel/csv.hpp"
#include "climpanel/errors.hpp"
#include "climpanel/quarter.hpp"

namespace climpanel {

/// Region x time matrix of reals. Missing cells hold NaN.
using Matrix = Eigen::MatrixXd;

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

/// Balanced region x quarter panel of named real-valued series.
///
/// Immutable once built: the `with_*` members return a new dataset and leave
/// the original untouched. Series storage is shared between copies, so copying
/// a dataset is cheap and concurrent reads are safe.
class PanelDataset {
public:
    PanelDataset() = default;

    PanelDataset(std::vector<std::string> regions, Quarter start, std::size_t periods)
        : regions_(std::move(regions)), start_(start), periods_(periods) {
        for (std::size_t i = 0; i < regions_.size(); ++i) {
            if (!region_pos_.emplace(regions_[i], i).second)
                throw IntegrityError("duplicate region id '" + regions_[i] + "'");
        }
    }

    std::size_t n_regions() const { return regions_.size(); }
    std::size_t n_periods() const { return periods_; }
    bool empty() const { return regions_.empty() || periods_ == 0; }

    const std::vector<std::string>& regions() const { return regions_; }
    const std::string& region(std::size_t i) const { return regions_.at(i); }

    std::size_t region_index(const std::string& name) const {
        auto it = region_pos_.find(name);
        if (it == region_pos_.end()) throw LookupError("unknown region '" + name + "'");
        return it->second;
    }

    Quarter start() const { return start_; }
    Quarter end() const { return start_ + (static_cast<std::int64_t>(periods_) - 1); }
    QuarterRange range() const { return {start(), end()}; }
    Quarter quarter_at(std::size_t t) const { return start_ + static_cast<std::int64_t>(t); }

    std::optional<std::size_t> time_index(const Quarter& q) const {
        auto d = q - start_;
        if (d < 0 || d >= static_cast<std::int64_t>(periods_)) return std::nullopt;
        return static_cast<std::size_t>(d);
    }

    std::vector<Quarter> time() const {
        std::vector<Quarter> out;
        out.reserve(periods_);
        for (std::size_t t = 0; t < periods_; ++t) out.push_back(quarter_at(t));
        return out;
    }

    /// Variable names in insertion order.
    std::vector<std::string> variables() const {
        std::vector<std::string> out;
        out.reserve(series_.size());
        for (const auto& s : series_) out.push_back(s.name);
        return out;
    }

    bool has(const std::string& name) const { return find(name) != nullptr; }

    const Matrix& series(const std::string& name) const {
        const auto* s = find(name);
        if (s == nullptr) throw LookupError("unknown variable '" + name + "'");
        return *s->values;
    }

    std::string unit(const std::string& name) const {
        const auto* s = find(name);
        if (s == nullptr) throw LookupError("unknown variable '" + name + "'");
        return s->unit;
    }

    /// Returns a copy with `name` added, or replaced if it already exists.
    PanelDataset with_series(const std::string& name, Matrix values, std::string unit = {}) const {
        if (name.empty()) throw SchemaError("series name must be nonempty");
        if (static_cast<std::size_t>(values.rows()) != regions_.size() ||
            static_cast<std::size_t>(values.cols()) != periods_)
            throw SchemaError("series '" + name + "' has shape " + std::to_string(values.rows()) + "x" +
                              std::to_string(values.cols()) + ", panel is " + std::to_string(regions_.size()) +
                              "x" + std::to_string(periods_));
        PanelDataset out = *this;
        auto ptr = std::make_shared<const Matrix>(std::move(values));
        for (auto& s : out.series_) {
            if (s.name == name) {
                s.values = std::move(ptr);
                s.unit = std::move(unit);
                return out;
            }
        }
        out.series_.push_back({name, std::move(unit), std::move(ptr)});
        return out;
    }

    /// Bitwise equality of layout and values (NaN cells compare equal to NaN cells).
    friend bool operator==(const PanelDataset& a, const PanelDataset& b) {
        if (a.regions_ != b.regions_ || a.start_ != b.start_ || a.periods_ != b.periods_) return false;
        if (a.series_.size() != b.series_.size()) return false;
        for (std::size_t k = 0; k < a.series_.size(); ++k) {
            const auto& sa = a.series_[k];
            const auto& sb = b.series_[k];
            if (sa.name != sb.name || sa.unit != sb.unit) return false;
            const Matrix& ma = *sa.values;
            const Matrix& mb = *sb.values;
            for (Eigen::Index i = 0; i < ma.size(); ++i) {
                double x = ma.data()[i], y = mb.data()[i];
                if (std::isnan(x) != std::isnan(y)) return false;
                if (!std::isnan(x) && std::memcmp(&x, &y, sizeof(double)) != 0) return false;
            }
        }
        return true;
    }

private:
    struct Series {
        std::string name;
        std::string unit;
        std::shared_ptr<const Matrix> values;
    };

    const Series* find(const std::string& name) const {
        for (const auto& s : series_)
            if (s.name == name) return &s;
        return nullptr;
    }

    std::vector<std::string> regions_;
    std::map<std::string, std::size_t> region_pos_;
    Quarter start_{};
    std::size_t periods_ = 0;
    std::vector<Series> series_;
};

// ---------------------------------------------------------------------------
// CSV ingestion
// ---------------------------------------------------------------------------

/// Column mapping for panel CSVs.
struct PanelSchema {
    std::string region_column = "region";
    std::string year_column = "year";
    std::string quarter_column = "quarter";
    /// Value columns to load; empty loads every non-key column.
    std::vector<std::string> value_columns;
    /// Token marking a missing cell.
    std::string missing_token;
    std::map<std::string, std::string> units;
};

inline PanelDataset read_panel(std::istream& in, const PanelSchema& schema, const std::string& source = "<stream>") {
    std::string line;
    std::size_t lineno = 0;
    if (!csv::next_data_line(in, line, lineno)) throw SchemaError(source + ": no header row");

    auto header = csv::split_record(line);
    for (auto& h : header) h = std::string(csv::trim(h));
    auto column_of = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw SchemaError(source + ": missing column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t c_region = column_of(schema.region_column);
    const std::size_t c_year = column_of(schema.year_column);
    const std::size_t c_quarter = column_of(schema.quarter_column);

    std::vector<std::string> names;
    std::vector<std::size_t> cols;
    if (schema.value_columns.empty()) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (c == c_region || c == c_year || c == c_quarter) continue;
            names.push_back(header[c]);
            cols.push_back(c);
        }
    } else {
        for (const auto& v : schema.value_columns) {
            names.push_back(v);
            cols.push_back(column_of(v));
        }
    }
    if (names.empty()) throw SchemaError(source + ": no value columns");

    std::vector<std::string> regions;
    std::map<std::string, std::size_t> region_pos;
    std::map<std::pair<std::size_t, std::int64_t>, std::vector<double>> cells;
    std::int64_t lo = std::numeric_limits<std::int64_t>::max();
    std::int64_t hi = std::numeric_limits<std::int64_t>::min();

    while (csv::next_data_line(in, line, lineno)) {
        auto rec = csv::split_record(line);
        if (rec.size() != header.size())
            throw SchemaError(source + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
                              " fields, found " + std::to_string(rec.size()));
        std::string region(csv::trim(rec[c_region]));
        if (region.empty()) throw SchemaError(source + ":" + std::to_string(lineno) + ": empty region id");
        auto year_text = csv::trim(rec[c_year]);
        auto year = csv::parse_int(year_text);
        auto qtr = csv::parse_int(rec[c_quarter]);
        if (!year || year_text.size() != 4 || *year < 1000)
            throw SchemaError(source + ":" + std::to_string(lineno) + ": year must be a 4-digit integer");
        if (!qtr || *qtr < 1 || *qtr > 4)
            throw SchemaError(source + ":" + std::to_string(lineno) + ": quarter must be an integer in 1..4");

        auto [rit, inserted] = region_pos.emplace(region, regions.size());
        if (inserted) regions.push_back(region);
        Quarter q(static_cast<int>(*year), static_cast<int>(*qtr));

        std::vector<double> values(names.size(), kMissing);
        for (std::size_t k = 0; k < names.size(); ++k) {
            auto raw = csv::trim(rec[cols[k]]);
            if (raw == schema.missing_token) continue;
            auto v = csv::parse_double(raw);
            if (!v)
                throw SchemaError(source + ":" + std::to_string(lineno) + ": malformed value '" + std::string(raw) +
                                  "' in column '" + names[k] + "'");
            values[k] = *v;
        }

        auto key = std::make_pair(rit->second, q.ordinal());
        auto [cit, fresh] = cells.emplace(key, values);
        if (!fresh) {
            for (std::size_t k = 0; k < names.size(); ++k) {
                double a = cit->second[k], b = values[k];
                bool same = (std::isnan(a) && std::isnan(b)) || a == b;
                if (!same)
                    throw IntegrityError(source + ": conflicting duplicate rows for (" + region + ", " + q.str() +
                                         ") in column '" + names[k] + "'");
            }
        }
        lo = std::min(lo, q.ordinal());
        hi = std::max(hi, q.ordinal());
    }
    if (cells.empty()) throw EmptyPanelError(source + ": no data rows");

    const auto periods = static_cast<std::size_t>(hi - lo + 1);
    std::vector<std::string> missing;
    std::size_t n_missing = 0;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        for (std::int64_t o = lo; o <= hi; ++o) {
            if (!cells.count({r, o})) {
                if (missing.size() < 20) missing.push_back("(" + regions[r] + ", " + Quarter::from_ordinal(o).str() + ")");
                ++n_missing;
            }
        }
    }
    if (n_missing > 0) {
        std::string msg = source + ": non-contiguous quarters, " + std::to_string(n_missing) + " missing:";
        for (const auto& m : missing) msg += " " + m;
        if (n_missing > missing.size()) msg += " ...";
        throw GapError(msg);
    }

    std::vector<Matrix> mats(names.size(), Matrix::Constant(regions.size(), periods, kMissing));
    for (const auto& [key, values] : cells) {
        auto t = static_cast<Eigen::Index>(key.second - lo);
        for (std::size_t k = 0; k < names.size(); ++k) mats[k](static_cast<Eigen::Index>(key.first), t) = values[k];
    }

    PanelDataset ds(std::move(regions), Quarter::from_ordinal(lo), periods);
    for (std::size_t k = 0; k < names.size(); ++k) {
        auto u = schema.units.find(names[k]);
        ds = ds.with_series(names[k], std::move(mats[k]), u == schema.units.end() ? std::string{} : u->second);
    }
    return ds;
}

inline PanelDataset load_panel(const std::string& path, const PanelSchema& schema = {}) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open '" + path + "'");
    return read_panel(in, schema, path);
}

/// Writes the panel in the ingestion schema, rows ordered by region then time.
/// `comments` are emitted first as '#' lines.
inline void write_panel(std::ostream& out, const PanelDataset& ds, const std::vector<std::string>& vars = {},
                        const std::vector<std::string>& comments = {}, const std::string& missing_token = "") {
    auto names = vars.empty() ? ds.variables() : vars;
    for (const auto& c : comments) out << "# " << c << '\n';
    out << "region,year,quarter";
    for (const auto& n : names) out << ',' << csv::quote_if_needed(n);
    out << '\n';
    std::vector<const Matrix*> mats;
    for (const auto& n : names) mats.push_back(&ds.series(n));
    for (std::size_t r = 0; r < ds.n_regions(); ++r) {
        for (std::size_t t = 0; t < ds.n_periods(); ++t) {
            auto q = ds.quarter_at(t);
            out << csv::quote_if_needed(ds.region(r)) << ',' << q.year << ',' << q.quarter;
            for (const auto* m : mats)
                out << ',' << csv::format_double((*m)(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(t)), missing_token);
            out << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

enum class TransformKind { Log, Diff, LogDiff, CumulativeLogGrowth };

struct TransformSpec {
    TransformKind kind = TransformKind::LogDiff;
    std::string source;
    /// Lead for CumulativeLogGrowth.
    int horizon = 0;
    /// Output name; empty picks a default derived from the source.
    std::string target;
};

inline std::string default_transform_name(const TransformSpec& spec) {
    switch (spec.kind) {
        case TransformKind::Log: return "log_" + spec.source;
        case TransformKind::Diff: return "d_" + spec.source;
        case TransformKind::LogDiff: return "dlog_" + spec.source;
        case TransformKind::CumulativeLogGrowth: return "cumlog" + std::to_string(spec.horizon) + "_" + spec.source;
    }
    return spec.source;
}

/// Natural log of a series; a non-positive cell is a domain error naming the cell. Missing stays missing.
inline Matrix log_levels(const PanelDataset& ds, const std::string& var) {
    const Matrix& x = ds.series(var);
    Matrix out(x.rows(), x.cols());
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
        for (Eigen::Index t = 0; t < x.cols(); ++t) {
            double v = x(r, t);
            if (is_missing(v)) {
                out(r, t) = kMissing;
            } else if (v <= 0.0) {
                throw DomainError("log of non-positive value " + csv::format_double(v) + " in '" + var + "' at (" +
                                  ds.region(static_cast<std::size_t>(r)) + ", " +
                                  ds.quarter_at(static_cast<std::size_t>(t)).str() + ")");
            } else {
                out(r, t) = std::log(v);
            }
        }
    }
    return out;
}

/// out[t] = x[t] - x[t-1]; the first column is missing.
inline Matrix first_difference(const Matrix& x) {
    Matrix out = Matrix::Constant(x.rows(), x.cols(), kMissing);
    for (Eigen::Index t = 1; t < x.cols(); ++t) out.col(t) = x.col(t) - x.col(t - 1);
    return out;
}

/// out[t] = x[t+lead] - x[t-1]; undefined cells are missing.
inline Matrix forward_minus_lag(const Matrix& x, int lead) {
    Matrix out = Matrix::Constant(x.rows(), x.cols(), kMissing);
    for (Eigen::Index t = 1; t + lead < x.cols(); ++t) out.col(t) = x.col(t + lead) - x.col(t - 1);
    return out;
}

/// out[t] = x[t-lag]; the first `lag` columns are missing.
inline Matrix lagged(const Matrix& x, int lag) {
    Matrix out = Matrix::Constant(x.rows(), x.cols(), kMissing);
    for (Eigen::Index t = lag; t < x.cols(); ++t) out.col(t) = x.col(t - lag);
    return out;
}

inline PanelDataset transform(const PanelDataset& ds, const TransformSpec& spec) {
    const std::string name = spec.target.empty() ? default_transform_name(spec) : spec.target;
    const std::string unit = ds.unit(spec.source);
    switch (spec.kind) {
        case TransformKind::Log: return ds.with_series(name, log_levels(ds, spec.source), "log " + unit);
        case TransformKind::Diff: return ds.with_series(name, first_difference(ds.series(spec.source)), unit);
        case TransformKind::LogDiff:
            return ds.with_series(name, first_difference(log_levels(ds, spec.source)), "log-diff");
        case TransformKind::CumulativeLogGrowth:
            if (spec.horizon < 0) throw DomainError("cumulative-log-growth horizon must be >= 0");
            return ds.with_series(name, forward_minus_lag(log_levels(ds, spec.source), spec.horizon), "log-diff");
    }
    return ds;
}

// ---------------------------------------------------------------------------
// Subsetting and alignment
// ---------------------------------------------------------------------------

/// Restricts to `vars` (all when empty) and to the overlap of `window` with the panel.
inline PanelDataset subset(const PanelDataset& ds, const std::vector<std::string>& vars, const QuarterRange& window) {
    for (const auto& v : vars)
        if (!ds.has(v)) throw LookupError("unknown variable '" + v + "'");
    Quarter lo = std::max(window.first, ds.start());
    Quarter hi = std::min(window.last, ds.end());
    if (window.empty() || hi < lo || ds.empty())
        throw EmptyPanelError("window " + window.str() + " selects no quarters of " + ds.range().str());
    auto t0 = static_cast<Eigen::Index>(*ds.time_index(lo));
    auto len = static_cast<Eigen::Index>(hi - lo + 1);

    PanelDataset out(ds.regions(), lo, static_cast<std::size_t>(len));
    for (const auto& v : vars.empty() ? ds.variables() : vars)
        out = out.with_series(v, ds.series(v).middleCols(t0, len), ds.unit(v));
    return out;
}

inline PanelDataset subset(const PanelDataset& ds, const QuarterRange& window) { return subset(ds, {}, window); }

/// Copies `vars` from `source` into `target`, matching regions by name and quarters by date.
/// `source` must cover every region and quarter of `target`.
inline PanelDataset align_series(const PanelDataset& target, const PanelDataset& source,
                                 const std::vector<std::string>& vars) {
    if (target.start() < source.start() || source.end() < target.end())
        throw GapError("source range " + source.range().str() + " does not cover " + target.range().str());
    auto t0 = static_cast<Eigen::Index>(*source.time_index(target.start()));
    auto len = static_cast<Eigen::Index>(target.n_periods());
    PanelDataset out = target;
    for (const auto& v : vars) {
        const Matrix& src = source.series(v);
        Matrix m(target.n_regions(), len);
        for (std::size_t r = 0; r < target.n_regions(); ++r) {
            std::size_t sr = 0;
            try {
                sr = source.region_index(target.region(r));
            } catch (const LookupError&) {
                throw GapError("region '" + target.region(r) + "' absent from source of '" + v + "'");
            }
            m.row(static_cast<Eigen::Index>(r)) = src.row(static_cast<Eigen::Index>(sr)).segment(t0, len);
        }
        out = out.with_series(v, std::move(m), source.unit(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Summary statistics
// ---------------------------------------------------------------------------

/// Type-7 (linear interpolation) quantile of sorted data.
inline double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) return kMissing;
    double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    auto lo = static_cast<std::size_t>(std::floor(h));
    auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

struct RegionSummary {
    std::string region;
    std::size_t n = 0;
    double min = kMissing;
    double q1 = kMissing;
    double median = kMissing;
    double q3 = kMissing;
    double max = kMissing;
    double mean = kMissing;
    double sd = kMissing;  // sample sd (n - 1); missing when n < 2
};

inline std::vector<RegionSummary> summary_stats(const PanelDataset& ds, const std::string& var) {
    const Matrix& x = ds.series(var);
    std::vector<RegionSummary> out;
    std::size_t total = 0;
    for (std::size_t r = 0; r < ds.n_regions(); ++r) {
        std::vector<double> v;
        for (Eigen::Index t = 0; t < x.cols(); ++t) {
            double c = x(static_cast<Eigen::Index>(r), t);
            if (!is_missing(c)) v.push_back(c);
        }
        RegionSummary s;
        s.region = ds.region(r);
        s.n = v.size();
        total += v.size();
        if (!v.empty()) {
            std::sort(v.begin(), v.end());
            s.min = v.front();
            s.max = v.back();
            s.q1 = quantile_type7(v, 0.25);
            s.median = quantile_type7(v, 0.5);
            s.q3 = quantile_type7(v, 0.75);
            double sum = 0.0;
            for (double c : v) sum += c;
            s.mean = sum / static_cast<double>(v.size());
            if (v.size() > 1) {
                double ss = 0.0;
                for (double c : v) ss += (c - s.mean) * (c - s.mean);
                s.sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
            }
        }
        out.push_back(s);
    }
    if (total == 0) throw EmptySummaryError("series '" + var + "' has no observed cells");
    return out;
}

}  // namespace climpanel
