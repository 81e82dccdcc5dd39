#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "gftg/fracops/grid.hpp"
#include "gftg/fracops/grunwald.hpp"

namespace gftg::fracops {

/// Discrete Riesz–Riemann-Liouville derivative of order alpha with respect to psi.
///
/// On an s-uniform grid the nodal values already are u∘psi^{-1}, so the psi-derivative
/// is the classical Grünwald scheme in s:
///   n = 1:  (1/2h^a) ( sum_{j=0}^{l}     w_j u_{l-j}   - sum_{j=0}^{N-l}   w_j u_{l+j}   )
///   n = 2:  (1/2h^a) ( sum_{j=0}^{l+1}   w_j u_{l-j+1} + sum_{j=0}^{N-l+1} w_j u_{l+j-1} )
/// for interior l = 1..N-1. Endpoint rows repeat the nearest interior row.
///
/// The stencil is linear, so it is assembled once into a dense matrix.
class RieszOperator {
public:
    RieszOperator(GridSpec grid, FracOrder order)
        : grid_(std::move(grid)), order_(order),
          weights_(grunwald_weights(order.alpha, grid_.intervals() + 1)) {
        assemble();
    }

    const GridSpec& grid() const { return grid_; }
    const FracOrder& order() const { return order_; }
    const std::vector<double>& weights() const { return weights_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }

    Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& u) const {
        if (u.size() != matrix_.cols()) throw ConfigError("riesz: vector length mismatch");
        return matrix_ * u;
    }

private:
    void assemble() {
        const auto N = static_cast<Eigen::Index>(grid_.intervals());
        const double c = 0.5 / std::pow(grid_.h(), order_.alpha);
        matrix_ = Eigen::MatrixXd::Zero(N + 1, N + 1);
        for (Eigen::Index l = 1; l < N; ++l) {
            if (order_.n == 1) {
                for (Eigen::Index j = 0; j <= l; ++j) matrix_(l, l - j) += c * weights_[j];
                for (Eigen::Index j = 0; j <= N - l; ++j) matrix_(l, l + j) -= c * weights_[j];
            } else {
                for (Eigen::Index j = 0; j <= l + 1; ++j) matrix_(l, l - j + 1) += c * weights_[j];
                for (Eigen::Index j = 0; j <= N - l + 1; ++j) matrix_(l, l + j - 1) += c * weights_[j];
            }
        }
        matrix_.row(0) = matrix_.row(1);
        matrix_.row(N) = matrix_.row(N - 1);
    }

    GridSpec grid_;
    FracOrder order_;
    std::vector<double> weights_;
    Eigen::MatrixXd matrix_;
};

inline Field riesz_derivative(const Field& u, const RieszOperator& op) {
    require_same_grid(u.grid, op.grid());
    return Field(u.grid, op.apply(u.values));
}

} // namespace gftg::fracops
