#pragma once

#include <cmath>
#include <concepts>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/forward/forward_operator.hpp"

namespace gftg::sampler {

template <class M>
concept EnergyModel = requires(const M& m, const Eigen::VectorXd& u) {
    { m.energy(u) } -> std::convertible_to<double>;
};

template <class P>
concept Penalty = requires(const P& p, const Eigen::VectorXd& u) {
    { p(u) } -> std::convertible_to<double>;
};

/// Posterior density relative to N(0, C0): exp(-Phi(u) - R(u)) with
/// Phi(u) = 0.5 |(G(u) - y) / sigma|^2. A zero sigma drops the data term entirely.
template <forward::ForwardOperator Forward, Penalty Reg>
class PosteriorModel {
public:
    PosteriorModel(Forward forward, Eigen::VectorXd y, double sigma, Reg penalty)
        : forward_(std::move(forward)), y_(std::move(y)), sigma_(sigma),
          penalty_(std::move(penalty)) {
        if (!(sigma >= 0.0)) throw ConfigError("noise level sigma must be >= 0");
        if (y_.size() != forward_.output_size())
            throw ConfigError("data length does not match forward operator output");
    }

    const Forward& forward() const { return forward_; }
    const Eigen::VectorXd& data() const { return y_; }
    double sigma() const { return sigma_; }
    const Reg& penalty() const { return penalty_; }

    double potential(const Eigen::VectorXd& u) const {
        if (sigma_ == 0.0) return 0.0;
        return 0.5 * ((forward_.apply(u) - y_) / sigma_).squaredNorm();
    }

    double regularization(const Eigen::VectorXd& u) const { return penalty_(u); }

    double energy(const Eigen::VectorXd& u) const { return potential(u) + regularization(u); }

private:
    Forward forward_;
    Eigen::VectorXd y_;
    double sigma_;
    Reg penalty_;
};

/// Phi + R identically zero: the chain targets the reference Gaussian itself.
struct NullModel {
    double energy(const Eigen::VectorXd&) const { return 0.0; }
};

template <forward::ForwardOperator F, Penalty R>
double potential(const Eigen::VectorXd& u, const PosteriorModel<F, R>& model) {
    return model.potential(u);
}

/// min{1, exp(E(u) - E(v))} from precomputed energies.
inline double acceptance_from_energies(double energy_current, double energy_proposal) {
    const double delta = energy_current - energy_proposal;
    if (delta >= 0.0) return 1.0;
    return std::exp(delta);
}

template <EnergyModel M>
double acceptance_prob(const Eigen::VectorXd& u, const Eigen::VectorXd& v, const M& model) {
    return acceptance_from_energies(model.energy(u), model.energy(v));
}

} // namespace gftg::sampler
