#pragma once

#include <concepts>
#include <random>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/random.hpp"

namespace gftg::forward {

template <class F>
concept ForwardOperator = requires(const F& f, const Eigen::VectorXd& u) {
    { f.apply(u) } -> std::convertible_to<Eigen::VectorXd>;
    { f.output_size() } -> std::convertible_to<Eigen::Index>;
};

/// y = G(u_true) + eta, eta ~ N(0, sigma^2 I).
template <ForwardOperator F>
Eigen::VectorXd synthesize_data(const F& model, const Eigen::VectorXd& u_true, double sigma,
                                Rng& rng) {
    if (!(sigma >= 0.0)) throw ConfigError("noise level sigma must be >= 0");
    Eigen::VectorXd y = model.apply(u_true);
    if (sigma > 0.0) {
        std::normal_distribution<double> normal(0.0, sigma);
        for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += normal(rng);
    }
    return y;
}

} // namespace gftg::forward
