#pragma once

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/fracops/functionals.hpp"

namespace gftg::prior {

/// R(u) = lambda * FTV(u).
class GftgPenalty {
public:
    GftgPenalty(double lambda, fracops::RieszOperator op) : lambda_(lambda), ftv_(std::move(op)) {
        if (!(lambda >= 0.0)) throw ConfigError("regularisation weight lambda must be >= 0");
    }

    double lambda() const { return lambda_; }
    const fracops::RieszOperator& op() const { return ftv_.op(); }

    double operator()(const Eigen::Ref<const Eigen::VectorXd>& u) const {
        if (lambda_ == 0.0) return 0.0;
        return lambda_ * ftv_(u);
    }

private:
    double lambda_;
    fracops::FtvFunctional ftv_;
};

/// Baseline hybrid prior: R(u) = lambda * sum |u_{l+1} - u_l|.
class TvPenalty {
public:
    explicit TvPenalty(double lambda) : lambda_(lambda) {
        if (!(lambda >= 0.0)) throw ConfigError("regularisation weight lambda must be >= 0");
    }

    double lambda() const { return lambda_; }

    double operator()(const Eigen::Ref<const Eigen::VectorXd>& u) const {
        return lambda_ * fracops::total_variation(u);
    }

private:
    double lambda_;
};

inline double gftg_penalty(const fracops::Field& u, const GftgPenalty& penalty) {
    fracops::require_same_grid(u.grid, penalty.op().grid());
    return penalty(u.values);
}

} // namespace gftg::prior
