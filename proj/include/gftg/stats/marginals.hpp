#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gftg/error.hpp"

namespace gftg::stats {

/// Density histogram on equal-width bins over [lo, hi].
struct Histogram1d {
    double lo = 0.0;
    double hi = 1.0;
    std::vector<double> density;

    double bin_width() const { return (hi - lo) / static_cast<double>(density.size()); }
    double mass() const {
        double m = 0.0;
        for (double d : density) m += d;
        return m * bin_width();
    }
};

/// Joint density on a bins x bins grid; density[a * bins + b] is row a of the first axis.
struct Histogram2d {
    std::size_t first = 0;
    std::size_t second = 0;
    Histogram1d x_axis;
    Histogram1d y_axis;
    std::vector<double> density;
};

struct MarginalGrid {
    std::vector<std::size_t> indices;
    std::vector<std::vector<double>> traces;
    std::vector<Histogram1d> histograms_1d;
    /// All pairs (i, j) with i < j in index order.
    std::vector<Histogram2d> histograms_2d;
};

namespace detail {

inline std::pair<double, double> range_of(const std::vector<double>& v) {
    auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    double lo = *mn;
    double hi = *mx;
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    return {lo, hi};
}

inline std::size_t bin_of(double v, double lo, double hi, std::size_t bins) {
    const double t = (v - lo) / (hi - lo) * static_cast<double>(bins);
    auto b = static_cast<std::ptrdiff_t>(t);
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(b, 0, static_cast<std::ptrdiff_t>(bins) - 1));
}

inline Histogram1d histogram(const std::vector<double>& v, std::size_t bins) {
    Histogram1d h;
    std::tie(h.lo, h.hi) = range_of(v);
    h.density.assign(bins, 0.0);
    for (double x : v) h.density[bin_of(x, h.lo, h.hi, bins)] += 1.0;
    const double scale = 1.0 / (static_cast<double>(v.size()) * h.bin_width());
    for (double& d : h.density) d *= scale;
    return h;
}

} // namespace detail

/// Per-index sample traces with normalised 1-D and pairwise 2-D histograms.
inline MarginalGrid marginals(const Eigen::MatrixXd& samples, const std::vector<std::size_t>& indices,
                              std::size_t bins) {
    if (bins < 2) throw ConfigError("marginals need at least 2 bins");
    if (samples.cols() == 0) throw ConfigError("marginals of an empty chain");
    MarginalGrid g;
    g.indices = indices;
    for (std::size_t idx : indices) {
        if (idx >= static_cast<std::size_t>(samples.rows()))
            throw ConfigError("marginal index " + std::to_string(idx) + " out of range");
        const auto row = samples.row(static_cast<Eigen::Index>(idx));
        g.traces.emplace_back(row.begin(), row.end());
        g.histograms_1d.push_back(detail::histogram(g.traces.back(), bins));
    }
    const double n = static_cast<double>(samples.cols());
    for (std::size_t a = 0; a < indices.size(); ++a) {
        for (std::size_t b = a + 1; b < indices.size(); ++b) {
            Histogram2d h;
            h.first = indices[a];
            h.second = indices[b];
            h.x_axis = g.histograms_1d[a];
            h.y_axis = g.histograms_1d[b];
            h.density.assign(bins * bins, 0.0);
            const auto& ta = g.traces[a];
            const auto& tb = g.traces[b];
            for (std::size_t k = 0; k < ta.size(); ++k) {
                const std::size_t ia = detail::bin_of(ta[k], h.x_axis.lo, h.x_axis.hi, bins);
                const std::size_t ib = detail::bin_of(tb[k], h.y_axis.lo, h.y_axis.hi, bins);
                h.density[ia * bins + ib] += 1.0;
            }
            const double scale = 1.0 / (n * h.x_axis.bin_width() * h.y_axis.bin_width());
            for (double& d : h.density) d *= scale;
            g.histograms_2d.push_back(std::move(h));
        }
    }
    return g;
}

} // namespace gftg::stats
