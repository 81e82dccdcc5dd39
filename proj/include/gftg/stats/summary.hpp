#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gftg/error.hpp"

namespace gftg::stats {

struct PosteriorSummary {
    Eigen::VectorXd mean;
    Eigen::VectorXd ci_lower;
    Eigen::VectorXd ci_upper;
    double acceptance_rate = 0.0;
};

/// Empirical quantile of sorted data with linear interpolation between the order
/// statistics at position p (n - 1).
inline double sorted_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw ConfigError("quantile of empty sample");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::vector<double> values, double p) {
    std::sort(values.begin(), values.end());
    return sorted_quantile(values, p);
}

/// Nodal mean and central credible band of a sample matrix (one column per state).
inline PosteriorSummary summarize(const Eigen::MatrixXd& samples, double acceptance_rate = 0.0,
                                  double level = 0.95) {
    if (samples.cols() == 0 || samples.rows() == 0)
        throw ConfigError("cannot summarise an empty chain");
    const double tail = 0.5 * (1.0 - level);
    PosteriorSummary s;
    s.acceptance_rate = acceptance_rate;
    s.mean = samples.rowwise().mean();
    s.ci_lower.resize(samples.rows());
    s.ci_upper.resize(samples.rows());
    std::vector<double> row(static_cast<std::size_t>(samples.cols()));
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
        for (Eigen::Index k = 0; k < samples.cols(); ++k) row[k] = samples(i, k);
        std::sort(row.begin(), row.end());
        s.ci_lower[i] = sorted_quantile(row, tail);
        s.ci_upper[i] = sorted_quantile(row, 1.0 - tail);
    }
    return s;
}

/// sqrt(mean |x_i - y_i|^2)
inline double rmsd(const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (x.size() != y.size()) throw ConfigError("rmsd: length mismatch");
    if (x.size() == 0) throw ConfigError("rmsd: empty vectors");
    return std::sqrt((x - y).squaredNorm() / static_cast<double>(x.size()));
}

} // namespace gftg::stats
