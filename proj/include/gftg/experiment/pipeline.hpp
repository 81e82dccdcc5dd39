#pragma once

#include <chrono>
#include <cstddef>
#include <variant>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/experiment/config.hpp"
#include "gftg/forward/convolution.hpp"
#include "gftg/forward/elliptic.hpp"
#include "gftg/forward/forward_operator.hpp"
#include "gftg/forward/heat.hpp"
#include "gftg/forward/profiles.hpp"
#include "gftg/fracops/riesz.hpp"
#include "gftg/prior/covariance.hpp"
#include "gftg/prior/penalty.hpp"
#include "gftg/random.hpp"
#include "gftg/sampler/pcn.hpp"
#include "gftg/stats/marginals.hpp"
#include "gftg/stats/summary.hpp"

namespace gftg::experiment {

using AnyForward = std::variant<forward::ConvolutionModel, forward::HeatSourceModel,
                                forward::EllipticModel>;
using AnyPenalty = std::variant<prior::GftgPenalty, prior::TvPenalty>;

struct ExperimentResult {
    RunConfig config;
    fracops::GridSpec grid;
    Eigen::VectorXd truth;
    Eigen::VectorXd data;
    sampler::Chain chain;
    stats::PosteriorSummary summary;
    double rmsd = 0.0;
    double jitter_used = 0.0;
    double wall_time_s = 0.0;
};

inline fracops::GridSpec make_grid(const RunConfig& c) {
    const auto [a, b] = forward::domain(c.example);
    return fracops::GridSpec(fracops::PsiMap(c.psi), a, b, c.n_grid);
}

inline AnyForward make_forward(const RunConfig& c, const fracops::GridSpec& grid) {
    switch (c.example) {
    case Example::Deconvolution: return forward::build_convolution(grid, c.kernel_width);
    case Example::HeatSource: {
        const auto phi = fracops::Field::sample(grid, forward::heat_initial_temperature);
        return forward::heat_forward_build(grid, c.time_steps, c.final_time, c.theta, phi);
    }
    case Example::EllipticParam:
        return forward::EllipticModel(grid, fracops::Field::sample(grid, forward::elliptic_source));
    }
    throw ConfigError("unhandled example");
}

inline AnyPenalty make_penalty(const RunConfig& c, const fracops::GridSpec& grid) {
    if (c.prior == PriorKind::TG) return prior::TvPenalty(c.lambda);
    return prior::GftgPenalty(c.lambda,
                              fracops::RieszOperator(grid, fracops::FracOrder::make(c.alpha)));
}

/// Node range [first, last] that enters the forward model and is scored by rmsd:
/// nodes 1..N for the blur, the interior 1..N-1 for the two boundary value problems.
inline std::pair<std::size_t, std::size_t> scored_nodes(const RunConfig& c) {
    if (c.example == Example::Deconvolution) return {1, c.n_grid};
    return {1, c.n_grid - 1};
}

/// truth -> synthetic data -> reference Gaussian -> pCN chain -> summaries.
inline ExperimentResult run_pipeline(const RunConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    const fracops::GridSpec grid = make_grid(c);
    const Eigen::VectorXd truth = forward::true_profile(c.example, grid).values;
    const AnyForward fwd = make_forward(c, grid);
    const AnyPenalty pen = make_penalty(c, grid);

    Rng data_rng = make_rng(c.data_seed);
    Eigen::VectorXd y = std::visit(
        [&](const auto& f) { return forward::synthesize_data(f, truth, c.sigma_noise, data_rng); }, fwd);

    const prior::CovarianceOperator cov = prior::build_covariance(grid, c.gamma, c.corr_length, c.jitter);
    const sampler::ChainSettings settings{c.beta, c.n_samples, c.burn_in, c.thinning, c.seed};
    const Eigen::VectorXd u0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.n_nodes()));

    sampler::Chain chain = std::visit(
        [&](const auto& f, const auto& p) {
            sampler::PosteriorModel model(f, y, c.sigma_noise, p);
            return sampler::run_chain(model, cov, settings, u0);
        },
        fwd, pen);
    if (chain.recorded() == 0)
        throw ConfigError("no states recorded after burn-in; reduce thinning or burn_in");

    ExperimentResult r{c, grid, truth, std::move(y), std::move(chain), {}, 0.0, cov.jitter(), 0.0};
    r.summary = stats::summarize(r.chain.samples, r.chain.acceptance_rate());
    const auto [first, last] = scored_nodes(c);
    const auto len = static_cast<Eigen::Index>(last - first + 1);
    r.rmsd = stats::rmsd(r.summary.mean.segment(static_cast<Eigen::Index>(first), len),
                         truth.segment(static_cast<Eigen::Index>(first), len));
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

} // namespace gftg::experiment
