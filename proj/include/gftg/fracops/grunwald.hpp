#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gftg/error.hpp"

namespace gftg::fracops {

/// Order alpha of a fractional derivative and its integer ceiling n = floor(alpha) + 1.
struct FracOrder {
    double alpha = 0.5;
    int n = 1;

    /// Orders used by the prior: alpha in (0,1) or (1,2).
    static FracOrder make(double alpha) {
        if (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0)
            throw ConfigError("fractional order must lie in (0,1) or (1,2), got " +
                              std::to_string(alpha));
        return FracOrder{alpha, static_cast<int>(std::floor(alpha)) + 1};
    }

    /// Bypasses the open-interval check, e.g. alpha = 1 on the n = 1 scheme to
    /// recover the central difference.
    static FracOrder with_scheme(double alpha, int n) {
        if (!(alpha > 0.0) || (n != 1 && n != 2))
            throw ConfigError("scheme order n must be 1 or 2 and alpha positive");
        return FracOrder{alpha, n};
    }
};

/// Grünwald–Letnikov weights w_0..w_count, w_j = (-1)^j binom(alpha, j), via
/// w_0 = 1, w_j = (1 - (1 + alpha)/j) w_{j-1}.
inline std::vector<double> grunwald_weights(double alpha, std::size_t count) {
    if (!(alpha > 0.0)) throw ConfigError("grunwald_weights: alpha must be positive");
    if (count < 1) throw ConfigError("grunwald_weights: count must be >= 1");
    std::vector<double> w(count + 1);
    w[0] = 1.0;
    for (std::size_t j = 1; j <= count; ++j)
        w[j] = (1.0 - (1.0 + alpha) / static_cast<double>(j)) * w[j - 1];
    return w;
}

} // namespace gftg::fracops
