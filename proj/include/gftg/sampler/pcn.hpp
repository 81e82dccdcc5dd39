#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/prior/covariance.hpp"
#include "gftg/random.hpp"
#include "gftg/sampler/posterior.hpp"

namespace gftg::sampler {

/// v = sqrt(1 - beta^2) u + beta w.
inline Eigen::VectorXd pcn_propose(const Eigen::VectorXd& u, double beta, const Eigen::VectorXd& w) {
    if (!(beta > 0.0 && beta <= 1.0)) throw ConfigError("pCN step beta must lie in (0, 1]");
    if (u.size() != w.size()) throw ConfigError("pcn_propose: length mismatch");
    return std::sqrt(1.0 - beta * beta) * u + beta * w;
}

struct ChainSettings {
    double beta = 0.03;
    std::size_t iterations = 1000;
    std::size_t burn_in = 0;
    std::size_t thinning = 1;
    std::uint64_t seed = 1;
};

struct Chain {
    ChainSettings settings;
    Eigen::VectorXd initial_state;
    double initial_energy = 0.0;
    /// Post-burn-in states, one column per recorded iteration.
    Eigen::MatrixXd samples;
    std::vector<double> sample_energies;
    /// Energy of the current state after every iteration.
    std::vector<double> energy_trace;
    std::vector<std::uint8_t> accepted;

    std::size_t recorded() const { return static_cast<std::size_t>(samples.cols()); }

    double acceptance_rate() const {
        if (accepted.empty()) return 0.0;
        std::size_t n = 0;
        for (auto a : accepted) n += a;
        return static_cast<double>(n) / static_cast<double>(accepted.size());
    }
};

/// Number of states kept after burn-in at the given stride.
inline std::size_t recorded_count(const ChainSettings& s) {
    return (s.iterations - s.burn_in) / s.thinning;
}

/// Preconditioned Crank–Nicolson Metropolis chain. Each iteration draws w ~ N(0, C0),
/// proposes v, draws theta ~ U[0,1] from the same stream and accepts iff
/// theta <= min{1, exp(E(u) - E(v))}. Iteration i (1-based) is stored when i > burn_in
/// and (i - burn_in) is a multiple of the thinning stride.
template <EnergyModel M>
Chain run_chain(const M& model, const prior::CovarianceOperator& cov, const ChainSettings& settings,
                const Eigen::VectorXd& u0) {
    if (!(settings.beta > 0.0 && settings.beta <= 1.0))
        throw ConfigError("pCN step beta must lie in (0, 1]");
    if (settings.iterations == 0) throw ConfigError("chain needs at least one iteration");
    if (settings.burn_in >= settings.iterations)
        throw ConfigError("burn-in must be smaller than the number of iterations");
    if (settings.thinning == 0) throw ConfigError("thinning stride must be >= 1");
    if (u0.size() != cov.dim()) throw ConfigError("initial state length does not match covariance");

    Chain chain;
    chain.settings = settings;
    chain.initial_state = u0;
    const Eigen::Index dim = u0.size();
    const std::size_t keep = recorded_count(settings);
    chain.samples.resize(dim, static_cast<Eigen::Index>(keep));
    chain.sample_energies.reserve(keep);
    chain.energy_trace.reserve(settings.iterations);
    chain.accepted.reserve(settings.iterations);

    auto checked = [](double e, std::size_t it) {
        if (!std::isfinite(e))
            throw NumericalError("non-finite energy at iteration " + std::to_string(it) +
                                 "; check the forward model configuration");
        return e;
    };

    Rng rng = make_rng(settings.seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    const double keep_weight = std::sqrt(1.0 - settings.beta * settings.beta);
    Eigen::VectorXd u = u0;
    double energy = checked(model.energy(u), 0);
    chain.initial_energy = energy;

    Eigen::VectorXd z(dim);
    Eigen::VectorXd v(dim);
    Eigen::Index column = 0;
    for (std::size_t it = 1; it <= settings.iterations; ++it) {
        for (Eigen::Index i = 0; i < dim; ++i) z[i] = normal(rng);
        v.noalias() = cov.factor().triangularView<Eigen::Lower>() * z;
        v = keep_weight * u + settings.beta * v;
        const double proposal_energy = checked(model.energy(v), it);
        const double theta = uniform(rng);
        const bool accept = theta <= acceptance_from_energies(energy, proposal_energy);
        if (accept) {
            u.swap(v);
            energy = proposal_energy;
        }
        chain.accepted.push_back(accept ? 1 : 0);
        chain.energy_trace.push_back(energy);
        if (it > settings.burn_in && (it - settings.burn_in) % settings.thinning == 0 &&
            column < static_cast<Eigen::Index>(keep)) {
            chain.samples.col(column++) = u;
            chain.sample_energies.push_back(energy);
        }
    }
    return chain;
}

} // namespace gftg::sampler
