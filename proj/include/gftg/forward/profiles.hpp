#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>

#include "gftg/error.hpp"
#include "gftg/fracops/grid.hpp"

namespace gftg::forward {

enum class Example { Deconvolution, HeatSource, EllipticParam };

inline std::string_view to_string(Example e) {
    switch (e) {
    case Example::Deconvolution: return "deconvolution";
    case Example::HeatSource: return "heat_source";
    case Example::EllipticParam: return "elliptic_param";
    }
    return "?";
}

inline Example example_from_string(std::string_view name) {
    if (name == "deconvolution") return Example::Deconvolution;
    if (name == "heat_source") return Example::HeatSource;
    if (name == "elliptic_param") return Example::EllipticParam;
    throw ConfigError("unknown example '" + std::string(name) +
                      "' (expected deconvolution, heat_source or elliptic_param)");
}

/// Physical domain [a, b] of each example.
inline std::pair<double, double> domain(Example e) {
    if (e == Example::Deconvolution) return {1.0, 2.0};
    return {1.0, 3.0};
}

/// Blurred source: a parabolic bump and a plateau.
inline double deconvolution_source(double x) {
    if (x >= 1.0 && x <= 1.5) return -16.0 * (x - 1.0) * (x - 1.5);
    if (x >= 1.7 && x <= 1.9) return 0.5;
    return 0.0;
}

/// Heat source: two plateaus around an oscillating section.
inline double heat_source(double x) {
    constexpr double pi = std::numbers::pi;
    if (x >= 1.15 && x <= 1.35) return 5.0;
    if (x >= 1.5 && x <= 2.5) return 5.0 * (std::sin(6.0 * pi * x + pi / 2.0) + 1.0);
    if (x >= 2.65 && x <= 2.85) return 5.0;
    return 0.0;
}

/// Piecewise-smooth reaction coefficient.
inline double elliptic_coefficient(double x) {
    if (x >= 1.3 && x < 1.6) return 0.8;
    if (x >= 1.6 && x < 1.8) return 1.4;
    if (x >= 1.8 && x < 2.2) return 13.0 * (x - 1.8) * (x - 2.2) + 1.4;
    if (x >= 2.2 && x < 2.4) return 1.4;
    if (x >= 2.4 && x < 2.7) return 0.8;
    return 0.0;
}

/// Source f = q (x-1)(x-3) - 2 built so that u = (x-1)(x-3) solves -u'' + q u = f.
inline double elliptic_source(double x) {
    return elliptic_coefficient(x) * (x - 1.0) * (x - 3.0) - 2.0;
}

inline double heat_initial_temperature(double x) { return std::sin(std::numbers::pi * x); }

inline double true_value(Example e, double x) {
    switch (e) {
    case Example::Deconvolution: return deconvolution_source(x);
    case Example::HeatSource: return heat_source(x);
    case Example::EllipticParam: return elliptic_coefficient(x);
    }
    return 0.0;
}

inline fracops::Field true_profile(Example e, const fracops::GridSpec& grid) {
    return fracops::Field::sample(grid, [e](double x) { return true_value(e, x); });
}

} // namespace gftg::forward
