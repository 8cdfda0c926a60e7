#pragma once

// Independent reference computations used only by the tests. None of these call
// into the estimation path they check.

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <tuple>
#include <vector>

namespace oracle {

/// Spreadsheet-style anomaly: looks up "same quarter, l years earlier" by calendar key
/// rather than by column offset. Returns NaN where the window is incomplete.
struct CalendarSeries {
    std::map<std::pair<int, int>, double> cells;  // (year, quarter) -> level

    double norm(int year, int quarter, int m) const {
        double sum = 0.0;
        for (int l = 1; l <= m; ++l) {
            auto it = cells.find({year - l, quarter});
            if (it == cells.end()) return std::nan("");
            sum += it->second;
        }
        return sum / m;
    }

    double anomaly(int year, int quarter, int m) const {
        double n = norm(year, quarter, m);
        return (2.0 / (m + 1)) * (cells.at({year, quarter}) - n);
    }
};

/// OLS with explicit region and/or time dummies solved by two-sided Jacobi SVD on the full design.
/// Returns only the slope coefficients (the first `X.cols()` entries).
inline Eigen::VectorXd dummy_ols_slopes(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                                        const std::vector<int>& region, const std::vector<int>& period,
                                        bool region_fe, bool time_fe) {
    std::map<int, int> rmap, tmap;
    for (int r : region) rmap.emplace(r, static_cast<int>(rmap.size()));
    for (int t : period) tmap.emplace(t, static_cast<int>(tmap.size()));
    const Eigen::Index n = y.size(), k = X.cols();
    const Eigen::Index nr = region_fe ? static_cast<Eigen::Index>(rmap.size()) : 0;
    // drop the first time dummy when both are present so the design has full rank
    const Eigen::Index nt = time_fe ? static_cast<Eigen::Index>(tmap.size()) - (region_fe ? 1 : 0) : 0;
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, k + nr + nt);
    D.leftCols(k) = X;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (region_fe) D(i, k + rmap[region[static_cast<std::size_t>(i)]]) = 1.0;
        if (time_fe) {
            int tt = tmap[period[static_cast<std::size_t>(i)]] - (region_fe ? 1 : 0);
            if (tt >= 0) D(i, k + nr + tt) = 1.0;
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    return svd.solve(y).head(k);
}

/// Newey-West sandwich by explicit double loop over observation pairs:
///   V = (X'X)^-1 [ sum_s sum_t w(|s-t|) e_s e_t x_s x_t' ] (X'X)^-1
inline Eigen::MatrixXd newey_west(const Eigen::MatrixXd& X, const Eigen::VectorXd& e, int L) {
    const Eigen::Index n = X.rows(), k = X.cols();
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index s = 0; s < n; ++s) {
        for (Eigen::Index t = 0; t < n; ++t) {
            auto d = std::abs(static_cast<long>(s - t));
            if (d > L) continue;
            double w = 1.0 - static_cast<double>(d) / (L + 1.0);
            for (Eigen::Index a = 0; a < k; ++a)
                for (Eigen::Index b = 0; b < k; ++b) meat(a, b) += w * e(s) * e(t) * X(s, a) * X(t, b);
        }
    }
    Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    return bread * meat * bread;
}

/// Heteroskedasticity-robust sandwich on cross-sectional sums, summed directly:
///   V = (X'X)^-1 [ sum_t (sum_i x_it e_it)(sum_j x_jt e_jt)' ] (X'X)^-1
inline Eigen::MatrixXd cross_section_white(const Eigen::MatrixXd& X, const Eigen::VectorXd& e,
                                           const std::vector<int>& period) {
    const Eigen::Index k = X.cols();
    std::map<int, Eigen::VectorXd> h;
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        auto [it, fresh] = h.try_emplace(period[static_cast<std::size_t>(i)], Eigen::VectorXd::Zero(k));
        it->second += e(i) * X.row(i).transpose();
    }
    Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(k, k);
    for (const auto& [t, v] : h) meat += v * v.transpose();
    Eigen::MatrixXd bread = (X.transpose() * X).inverse();
    return bread * meat * bread;
}

}  // namespace oracle
