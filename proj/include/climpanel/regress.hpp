#pragma once

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "climpanel/dataset.hpp"

namespace climpanel {

enum class FixedEffects : unsigned { None = 0, Region = 1, Time = 2, Both = 3 };

inline bool has_region_fe(FixedEffects fe) { return (static_cast<unsigned>(fe) & 1u) != 0; }
inline bool has_time_fe(FixedEffects fe) { return (static_cast<unsigned>(fe) & 2u) != 0; }

inline std::string to_string(FixedEffects fe) {
    switch (fe) {
        case FixedEffects::None: return "none";
        case FixedEffects::Region: return "region";
        case FixedEffects::Time: return "time";
        case FixedEffects::Both: return "region+time";
    }
    return "?";
}

/// Stacked regression rows with their panel coordinates.
///
/// `y` and `X` hold the working (possibly demeaned) data; `y_raw` and `X_raw`
/// keep the untransformed values for fixed-effect recovery.
struct Design {
    std::string outcome;
    std::vector<std::string> names;
    Eigen::VectorXd y;
    Eigen::MatrixXd X;
    Eigen::VectorXd y_raw;
    Eigen::MatrixXd X_raw;
    std::vector<int> region;  // row -> region index
    std::vector<int> period;  // row -> time index
    int n_regions = 0;
    int n_periods = 0;
    FixedEffects fe = FixedEffects::None;
    bool transformed = false;
    int absorbed = 0;  // rank of the absorbed fixed-effect space
    std::vector<std::string> warnings;

    Eigen::Index nobs() const { return y.size(); }
    Eigen::Index k() const { return X.cols(); }
};

/// What to regress on what, with which fixed effects and over which quarters.
struct RegressionSpec {
    std::string outcome;
    std::vector<std::string> regressors;
    FixedEffects fixed_effects = FixedEffects::Both;
    std::optional<QuarterRange> sample;
    /// Adds a constant column when no fixed effect is declared.
    bool intercept = true;
};

inline constexpr const char* kInterceptName = "(intercept)";

/// Stacks region x time matrices into a design, region-major, dropping any row with a
/// missing value (listwise deletion). Only columns in [t_first, t_last] are used.
inline Design stack_design(const std::string& outcome, const Matrix& y, const std::vector<std::string>& names,
                           const std::vector<const Matrix*>& regressors, FixedEffects fe, bool intercept,
                           Eigen::Index t_first = 0, Eigen::Index t_last = -1) {
    if (names.size() != regressors.size()) throw SchemaError("regressor names and columns differ in count");
    if (names.empty() && !(intercept && fe == FixedEffects::None))
        throw SchemaError("regression needs at least one regressor");
    for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t b = a + 1; b < names.size(); ++b)
            if (names[a] == names[b]) throw SchemaError("duplicate regressor '" + names[a] + "'");
    if (t_last < 0) t_last = y.cols() - 1;

    const bool add_const = intercept && fe == FixedEffects::None;
    Design d;
    d.outcome = outcome;
    d.names = names;
    if (add_const) d.names.insert(d.names.begin(), kInterceptName);
    d.n_regions = static_cast<int>(y.rows());
    d.n_periods = static_cast<int>(y.cols());
    d.fe = fe;

    std::vector<std::pair<Eigen::Index, Eigen::Index>> rows;
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
        for (Eigen::Index t = t_first; t <= t_last; ++t) {
            if (is_missing(y(r, t))) continue;
            bool ok = true;
            for (const auto* x : regressors) {
                if (is_missing((*x)(r, t))) {
                    ok = false;
                    break;
                }
            }
            if (ok) rows.emplace_back(r, t);
        }
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto k = static_cast<Eigen::Index>(d.names.size());
    d.y.resize(n);
    d.X.resize(n, k);
    d.region.resize(rows.size());
    d.period.resize(rows.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        auto [r, t] = rows[static_cast<std::size_t>(i)];
        d.y(i) = y(r, t);
        Eigen::Index c = 0;
        if (add_const) d.X(i, c++) = 1.0;
        for (const auto* x : regressors) d.X(i, c++) = (*x)(r, t);
        d.region[static_cast<std::size_t>(i)] = static_cast<int>(r);
        d.period[static_cast<std::size_t>(i)] = static_cast<int>(t);
    }
    d.y_raw = d.y;
    d.X_raw = d.X;
    return d;
}

inline Design build_design(const PanelDataset& ds, const RegressionSpec& spec) {
    std::vector<const Matrix*> cols;
    for (const auto& name : spec.regressors) cols.push_back(&ds.series(name));
    Eigen::Index t0 = 0, t1 = static_cast<Eigen::Index>(ds.n_periods()) - 1;
    if (spec.sample) {
        Quarter lo = std::max(spec.sample->first, ds.start());
        Quarter hi = std::min(spec.sample->last, ds.end());
        if (spec.sample->empty() || hi < lo) throw EmptyPanelError("sample " + spec.sample->str() + " is empty");
        t0 = static_cast<Eigen::Index>(*ds.time_index(lo));
        t1 = static_cast<Eigen::Index>(*ds.time_index(hi));
    }
    auto d = stack_design(spec.outcome, ds.series(spec.outcome), spec.regressors, cols, spec.fixed_effects,
                          spec.intercept, t0, t1);
    if (d.nobs() == 0) throw SampleError("no complete rows for '" + spec.outcome + "' after listwise deletion");
    return d;
}

namespace detail {

inline Design keep_rows(const Design& d, const std::vector<char>& keep) {
    Design out = d;
    const auto n = static_cast<Eigen::Index>(std::count(keep.begin(), keep.end(), char{1}));
    out.y.resize(n);
    out.X.resize(n, d.k());
    out.y_raw.resize(n);
    out.X_raw.resize(n, d.k());
    out.region.clear();
    out.period.clear();
    Eigen::Index j = 0;
    for (Eigen::Index i = 0; i < d.nobs(); ++i) {
        if (!keep[static_cast<std::size_t>(i)]) continue;
        out.y(j) = d.y(i);
        out.X.row(j) = d.X.row(i);
        out.y_raw(j) = d.y_raw(i);
        out.X_raw.row(j) = d.X_raw.row(i);
        out.region.push_back(d.region[static_cast<std::size_t>(i)]);
        out.period.push_back(d.period[static_cast<std::size_t>(i)]);
        ++j;
    }
    return out;
}

/// Subtracts group means from every column of `m`; returns the largest |mean| removed.
inline double demean_by(Eigen::MatrixXd& m, const std::vector<int>& group, int n_groups) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(n_groups, m.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(n_groups);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        sums.row(group[static_cast<std::size_t>(i)]) += m.row(i);
        counts(group[static_cast<std::size_t>(i)]) += 1.0;
    }
    for (int g = 0; g < n_groups; ++g)
        if (counts(g) > 0) sums.row(g) /= counts(g);
    for (Eigen::Index i = 0; i < m.rows(); ++i) m.row(i) -= sums.row(group[static_cast<std::size_t>(i)]);
    return m.rows() == 0 ? 0.0 : sums.cwiseAbs().maxCoeff();
}

inline int count_groups(const std::vector<int>& group) {
    std::vector<int> g = group;
    std::sort(g.begin(), g.end());
    return static_cast<int>(std::unique(g.begin(), g.end()) - g.begin());
}

/// Connected components of the bipartite region-period graph formed by the rows.
inline int count_components(const Design& d) {
    std::vector<int> parent(static_cast<std::size_t>(d.n_regions + d.n_periods));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (std::size_t i = 0; i < d.region.size(); ++i) {
        int a = find(d.region[i]), b = find(d.n_regions + d.period[i]);
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    std::vector<int> roots;
    for (std::size_t i = 0; i < d.region.size(); ++i) roots.push_back(find(d.region[i]));
    std::sort(roots.begin(), roots.end());
    return static_cast<int>(std::unique(roots.begin(), roots.end()) - roots.begin());
}

}  // namespace detail

/// Absorbs the declared fixed effects by demeaning.
///
/// Singleton groups carry no within variation and are dropped (iteratively for two-way
/// designs) with a warning; with `drop_singletons` false they are kept and demean to
/// zero. Balanced two-way panels use exact double centering; unbalanced ones alternate
/// region/time demeaning until every group mean is below 1e-13 of the column scale.
inline Design within_transform(const Design& input, bool drop_singletons = true) {
    Design d = input;
    if (d.transformed) return d;
    d.transformed = true;
    if (d.fe == FixedEffects::None) return d;

    for (bool changed = true; changed;) {
        changed = false;
        for (int dim = 0; dim < 2; ++dim) {
            bool active = dim == 0 ? has_region_fe(d.fe) : has_time_fe(d.fe);
            if (!active || d.nobs() == 0) continue;
            const auto& group = dim == 0 ? d.region : d.period;
            int n_groups = dim == 0 ? d.n_regions : d.n_periods;
            std::vector<int> counts(static_cast<std::size_t>(n_groups), 0);
            for (int g : group) ++counts[static_cast<std::size_t>(g)];
            std::vector<char> keep(group.size(), 1);
            std::size_t dropped = 0;
            for (std::size_t i = 0; i < group.size(); ++i) {
                if (counts[static_cast<std::size_t>(group[i])] == 1) {
                    keep[i] = 0;
                    ++dropped;
                    d.warnings.push_back(std::string(drop_singletons ? "dropped" : "kept") + " singleton " +
                                         (dim == 0 ? "region" : "period") + " group " + std::to_string(group[i]));
                }
            }
            if (dropped > 0 && drop_singletons) {
                d = detail::keep_rows(d, keep);
                changed = true;
            }
        }
    }
    if (d.nobs() == 0) return d;

    Eigen::MatrixXd m(d.nobs(), d.k() + 1);
    m.col(0) = d.y;
    m.rightCols(d.k()) = d.X;

    if (d.fe == FixedEffects::Region) {
        detail::demean_by(m, d.region, d.n_regions);
        d.absorbed = detail::count_groups(d.region);
    } else if (d.fe == FixedEffects::Time) {
        detail::demean_by(m, d.period, d.n_periods);
        d.absorbed = detail::count_groups(d.period);
    } else {
        const int nr = detail::count_groups(d.region);
        const int nt = detail::count_groups(d.period);
        const bool balanced = static_cast<Eigen::Index>(nr) * nt == d.nobs();
        if (balanced) {
            Eigen::MatrixXd centered = m;
            detail::demean_by(centered, d.region, d.n_regions);
            Eigen::MatrixXd time_means = m;
            detail::demean_by(time_means, d.period, d.n_periods);
            Eigen::RowVectorXd grand = m.colwise().mean();
            // x - xbar_r - xbar_t + xbar = (x - xbar_r) - (xbar_t - xbar)
            m = centered - (m - time_means) + grand.replicate(m.rows(), 1);
        } else {
            Eigen::RowVectorXd scale = m.cwiseAbs().colwise().maxCoeff().cwiseMax(1.0);
            const double tol = 1e-13 * scale.maxCoeff();
            int iter = 0;
            for (;; ++iter) {
                detail::demean_by(m, d.region, d.n_regions);
                double worst = detail::demean_by(m, d.period, d.n_periods);
                Eigen::MatrixXd probe = m;
                worst = std::max(worst, detail::demean_by(probe, d.region, d.n_regions));
                if (worst < tol) break;
                if (iter > 200000) throw EstimationError("two-way demeaning did not converge");
            }
        }
        d.absorbed = nr + nt - detail::count_components(d);
    }
    d.y = m.col(0);
    d.X = m.rightCols(d.k());
    return d;
}

// ---------------------------------------------------------------------------
// Least squares
// ---------------------------------------------------------------------------

struct FitResult {
    std::string outcome;
    std::vector<std::string> names;
    Eigen::VectorXd coef;
    Eigen::MatrixXd vcov;
    Eigen::VectorXd se;
    std::string vcov_type = "classical";
    Eigen::Index nobs = 0;
    Eigen::Index rank = 0;
    Eigen::Index dof = 0;
    double rss = 0.0;
    Eigen::MatrixXd xtx_inv;    // (X'X)^{-1} of the transformed design
    Design design;              // transformed design actually fitted
    Eigen::VectorXd resid;      // per fitted row
    Matrix residuals;           // region x time, missing where not fitted
    std::optional<Eigen::VectorXd> fe_estimates;  // per-group intercepts for one-way designs
    std::vector<std::string> warnings;

    Eigen::Index index_of(const std::string& name) const {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw LookupError("no coefficient named '" + name + "'");
        return static_cast<Eigen::Index>(it - names.begin());
    }
    double coef_of(const std::string& name) const { return coef(index_of(name)); }
    double se_of(const std::string& name) const { return se(index_of(name)); }
};

/// Rank tolerance for the pivoted QR, relative to the largest |R_jj|.
inline constexpr double kRankTolerance = 1e-10;

namespace detail {

/// Names every pivoted column that falls outside the numerical rank, with the
/// columns it is a combination of.
inline std::string describe_rank_deficiency(const Eigen::ColPivHouseholderQR<Eigen::MatrixXd>& qr,
                                            const std::vector<std::string>& names) {
    const Eigen::Index rank = qr.rank();
    const Eigen::Index k = qr.cols();
    const auto& perm = qr.colsPermutation().indices();
    Eigen::MatrixXd R = qr.matrixR().topLeftCorner(std::min(qr.rows(), k), k).template triangularView<Eigen::Upper>();
    std::string msg = "design is rank deficient (rank " + std::to_string(rank) + " < " + std::to_string(k) + ");";
    for (Eigen::Index j = rank; j < k; ++j) {
        const auto& dep = names[static_cast<std::size_t>(perm(j))];
        Eigen::VectorXd combo = Eigen::VectorXd::Zero(rank);
        if (rank > 0)
            combo = R.topLeftCorner(rank, rank).triangularView<Eigen::Upper>().solve(R.block(0, j, rank, 1));
        std::vector<std::string> partners;
        const double big = combo.size() > 0 ? std::max(1.0, combo.cwiseAbs().maxCoeff()) : 1.0;
        for (Eigen::Index i = 0; i < rank; ++i)
            if (std::abs(combo(i)) > 1e-8 * big) partners.push_back(names[static_cast<std::size_t>(perm(i))]);
        if (partners.empty()) {
            msg += " column '" + dep + "' has no variation after fixed-effect absorption;";
        } else {
            msg += " collinear columns: '" + dep + "'";
            for (const auto& p : partners) msg += ", '" + p + "'";
            msg += ";";
        }
    }
    return msg;
}

}  // namespace detail

/// Least squares on a (demeaned) design via column-pivoted Householder QR.
/// Untransformed designs are passed through within_transform first.
inline FitResult ols(const Design& input) {
    Design d = input.transformed ? input : within_transform(input);
    const Eigen::Index n = d.nobs(), k = d.k();
    if (k == 0) throw SchemaError("regression needs at least one regressor");
    if (n < k) throw SampleError("only " + std::to_string(n) + " usable rows for " + std::to_string(k) + " coefficients");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(d.X.rows(), d.X.cols());
    qr.setThreshold(kRankTolerance);
    qr.compute(d.X);
    if (qr.rank() < k) throw RankError(detail::describe_rank_deficiency(qr, d.names));

    FitResult f;
    f.outcome = d.outcome;
    f.names = d.names;
    f.coef = qr.solve(d.y);
    f.resid = d.y - d.X * f.coef;
    f.rss = f.resid.squaredNorm();
    f.nobs = n;
    f.rank = qr.rank();
    f.dof = n - f.rank - d.absorbed;

    Eigen::MatrixXd R = qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    Eigen::MatrixXd Rinv = R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    Eigen::MatrixXd unpermuted = Rinv * Rinv.transpose();
    f.xtx_inv = qr.colsPermutation() * unpermuted * qr.colsPermutation().transpose();

    f.residuals = Matrix::Constant(d.n_regions, d.n_periods, kMissing);
    for (Eigen::Index i = 0; i < n; ++i)
        f.residuals(d.region[static_cast<std::size_t>(i)], d.period[static_cast<std::size_t>(i)]) = f.resid(i);

    if (d.fe == FixedEffects::Region || d.fe == FixedEffects::Time) {
        const auto& group = d.fe == FixedEffects::Region ? d.region : d.period;
        const int ng = d.fe == FixedEffects::Region ? d.n_regions : d.n_periods;
        Eigen::VectorXd sums = Eigen::VectorXd::Zero(ng), counts = Eigen::VectorXd::Zero(ng);
        Eigen::VectorXd part = d.y_raw - d.X_raw * f.coef;
        for (Eigen::Index i = 0; i < n; ++i) {
            sums(group[static_cast<std::size_t>(i)]) += part(i);
            counts(group[static_cast<std::size_t>(i)]) += 1.0;
        }
        Eigen::VectorXd fe(ng);
        for (int g = 0; g < ng; ++g) fe(g) = counts(g) > 0 ? sums(g) / counts(g) : kMissing;
        f.fe_estimates = fe;
    }

    f.warnings = d.warnings;
    f.design = std::move(d);
    if (f.dof > 0) {
        f.vcov = (f.rss / static_cast<double>(f.dof)) * f.xtx_inv;
    } else {
        f.vcov = Eigen::MatrixXd::Constant(k, k, kMissing);
        f.warnings.push_back("no residual degrees of freedom; classical covariance undefined");
    }
    f.se = f.vcov.diagonal().cwiseSqrt();
    return f;
}

/// Replaces the covariance (and standard errors) of a fit.
inline FitResult with_vcov(FitResult fit, Eigen::MatrixXd vcov, std::string type) {
    fit.vcov = std::move(vcov);
    fit.se = fit.vcov.diagonal().cwiseSqrt();
    fit.vcov_type = std::move(type);
    return fit;
}

/// sigma^2 (X'X)^{-1} with sigma^2 = RSS / dof.
inline Eigen::MatrixXd vcov_classical(const FitResult& fit) {
    if (fit.dof <= 0)
        throw DofError("classical covariance needs positive residual dof, have " + std::to_string(fit.dof));
    return (fit.resid.squaredNorm() / static_cast<double>(fit.dof)) * fit.xtx_inv;
}

// ---------------------------------------------------------------------------
// Driscoll-Kraay
// ---------------------------------------------------------------------------

struct HACSpec {
    /// Lag truncation L; negative selects the default rule for the sample length.
    int bandwidth = -1;
    /// Multiply the long-run covariance by T / (T - k).
    bool small_sample = true;
};

/// Newey-West rule floor(4 (T/100)^(2/9)).
inline int default_bandwidth(Eigen::Index periods) {
    return static_cast<int>(std::floor(4.0 * std::pow(static_cast<double>(periods) / 100.0, 2.0 / 9.0)));
}

inline double bartlett_weight(int lag, int bandwidth) { return 1.0 - static_cast<double>(lag) / (bandwidth + 1.0); }

/// Number of periods spanned by the fitted rows (first to last, inclusive).
inline Eigen::Index time_span(const FitResult& fit) {
    const auto& p = fit.design.period;
    if (p.empty()) return 0;
    auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    return *hi - *lo + 1;
}

/// Driscoll-Kraay covariance: Bartlett-weighted HAC on the cross-sectional sums
/// h_t = sum_i x_it e_it. With one region this is the Newey-West estimator.
inline Eigen::MatrixXd vcov_driscoll_kraay(const FitResult& fit, const HACSpec& hac = {}) {
    const auto& d = fit.design;
    const Eigen::Index T = time_span(fit);
    const Eigen::Index k = fit.coef.size();
    const int L = hac.bandwidth < 0 ? default_bandwidth(T) : hac.bandwidth;
    if (L >= T)
        throw BandwidthError("bandwidth " + std::to_string(L) + " must be below the " + std::to_string(T) +
                             " periods in the sample");
    if (hac.small_sample && T <= k)
        throw DofError("small-sample factor T/(T-k) undefined with T=" + std::to_string(T) + ", k=" + std::to_string(k));

    const int t0 = *std::min_element(d.period.begin(), d.period.end());
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(T, k);  // row t: h_t'
    for (Eigen::Index i = 0; i < d.nobs(); ++i)
        H.row(d.period[static_cast<std::size_t>(i)] - t0) += fit.resid(i) * d.X.row(i);

    const double Td = static_cast<double>(T);
    Eigen::MatrixXd S = H.transpose() * H / Td;
    for (int l = 1; l <= L; ++l) {
        Eigen::MatrixXd gamma = H.bottomRows(T - l).transpose() * H.topRows(T - l) / Td;
        S += bartlett_weight(l, L) * (gamma + gamma.transpose());
    }
    if (hac.small_sample) S *= Td / (Td - static_cast<double>(k));
    Eigen::MatrixXd V = fit.xtx_inv * (Td * S) * fit.xtx_inv;
    return 0.5 * (V + V.transpose());
}

// ---------------------------------------------------------------------------
// Inference helpers
// ---------------------------------------------------------------------------

/// Reference distribution for bands and significance.
struct Quantile {
    enum class Kind { Normal, StudentT } kind = Kind::Normal;
    double dof = 0.0;

    static Quantile normal() { return {}; }
    static Quantile student_t(double dof) { return {Kind::StudentT, dof}; }
};

/// Two-sided critical value for coverage `level`, i.e. the (1+level)/2 quantile.
inline double critical_value(double level, const Quantile& q = {}) {
    if (!(level >= 0.0 && level < 1.0)) throw DomainError("confidence level must be in [0, 1)");
    if (level == 0.0) return 0.0;
    const double p = (1.0 + level) / 2.0;
    if (q.kind == Quantile::Kind::StudentT) {
        if (!(q.dof > 0.0)) throw DofError("t quantile needs positive dof");
        return boost::math::quantile(boost::math::students_t(q.dof), p);
    }
    return boost::math::quantile(boost::math::normal(), p);
}

/// Two-sided p-value of estimate / se.
inline double p_value(double estimate, double se, const Quantile& q = {}) {
    if (std::isnan(estimate) || std::isnan(se) || se < 0.0) return kMissing;
    if (se == 0.0) return estimate == 0.0 ? 1.0 : 0.0;
    const double z = std::abs(estimate / se);
    if (q.kind == Quantile::Kind::StudentT)
        return 2.0 * boost::math::cdf(boost::math::complement(boost::math::students_t(q.dof), z));
    return 2.0 * boost::math::cdf(boost::math::complement(boost::math::normal(), z));
}

struct Band {
    double lo = 0.0;
    double hi = 0.0;
};

inline Band confidence_band(double estimate, double se, double level, const Quantile& q = {}) {
    const double c = critical_value(level, q);
    return {estimate - c * se, estimate + c * se};
}

/// Per-coefficient bands of a fit.
inline std::vector<Band> confidence_band(const FitResult& fit, double level, const Quantile& q = {}) {
    std::vector<Band> out;
    for (Eigen::Index j = 0; j < fit.coef.size(); ++j) out.push_back(confidence_band(fit.coef(j), fit.se(j), level, q));
    return out;
}

/// "***" at 1%, "**" at 5%, "*" at 10%, two-sided; |z| equal to the critical value counts.
inline std::string significance_stars(double estimate, double se, const Quantile& q = {}) {
    if (std::isnan(estimate) || std::isnan(se) || se < 0.0) return "";
    const double z = se == 0.0 ? (estimate == 0.0 ? 0.0 : INFINITY) : std::abs(estimate / se);
    if (z >= critical_value(0.99, q)) return "***";
    if (z >= critical_value(0.95, q)) return "**";
    if (z >= critical_value(0.90, q)) return "*";
    return "";
}

}  // namespace climpanel
