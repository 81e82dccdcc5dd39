#pragma once

#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/fracops/riesz.hpp"

namespace gftg::fracops {

/// Interior dx-weights x'(s_l) h, zero at the two endpoints.
inline Eigen::VectorXd interior_dx_weights(const GridSpec& grid) {
    Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.n_nodes()));
    for (std::size_t l = 1; l < grid.intervals(); ++l) w[l] = grid.dx(l);
    return w;
}

/// Fractional total variation: rectangle rule for the integral of |D u| dx over interior nodes.
class FtvFunctional {
public:
    explicit FtvFunctional(RieszOperator op)
        : op_(std::move(op)), weights_(interior_dx_weights(op_.grid())) {}

    const RieszOperator& op() const { return op_; }
    const Eigen::VectorXd& weights() const { return weights_; }

    double operator()(const Eigen::Ref<const Eigen::VectorXd>& u) const {
        return weights_.dot(op_.apply(u).cwiseAbs());
    }

private:
    RieszOperator op_;
    Eigen::VectorXd weights_;
};

inline double ftv(const Field& u, const RieszOperator& op) {
    require_same_grid(u.grid, op.grid());
    return interior_dx_weights(u.grid).dot(op.apply(u.values).cwiseAbs());
}

/// Classical total variation sum |u_{l+1} - u_l|, the forward-difference
/// discretisation of the integral of |u'| dx (invariant under reparametrisation).
inline double total_variation(const Eigen::Ref<const Eigen::VectorXd>& u) {
    const auto n = u.size();
    if (n < 2) return 0.0;
    return (u.tail(n - 1) - u.head(n - 1)).cwiseAbs().sum();
}

/// Discrete inner product of W^{alpha,psi}_2: sum (u v + Du Dv) dx over interior nodes.
inline double sobolev_inner(const Field& u, const Field& v, const RieszOperator& op) {
    require_same_grid(u.grid, op.grid());
    require_same_grid(v.grid, op.grid());
    const Eigen::VectorXd w = interior_dx_weights(op.grid());
    const Eigen::VectorXd du = op.apply(u.values);
    const Eigen::VectorXd dv = op.apply(v.values);
    return (w.array() * (u.values.array() * v.values.array() + du.array() * dv.array())).sum();
}

/// (sum |u|^p dx + sum |Du|^p dx)^{1/p}, p in {1, 2}.
inline double sobolev_norm(const Field& u, const RieszOperator& op, int p) {
    if (p != 1 && p != 2) throw ConfigError("sobolev_norm supports p = 1 or p = 2");
    require_same_grid(u.grid, op.grid());
    const Eigen::VectorXd w = interior_dx_weights(op.grid());
    const Eigen::VectorXd du = op.apply(u.values);
    if (p == 1) return w.dot(u.values.cwiseAbs()) + w.dot(du.cwiseAbs());
    return std::sqrt(w.dot(u.values.cwiseAbs2()) + w.dot(du.cwiseAbs2()));
}

} // namespace gftg::fracops
