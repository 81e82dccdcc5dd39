#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/fracops/grid.hpp"

namespace gftg::forward {

/// Gaussian blur g(x) = ∫ k(x - x') f(x') dx', k(x) = C exp(-x^2 / 2r^2), C = 1/(r sqrt(2 pi)),
/// discretised by the rectangle rule on nodes 1..N:
///   K_ij = h x'(s_j) C exp(-(x_i - x_j)^2 / 2r^2).
/// For psi = x this is K_ij = h C exp(-((i-j)h)^2 / 2r^2). Node 0 is not observed.
class ConvolutionModel {
public:
    ConvolutionModel(fracops::GridSpec grid, double r) : grid_(std::move(grid)), r_(r) {
        if (!(r > 0.0)) throw ConfigError("kernel width r must be positive");
        const auto n = static_cast<Eigen::Index>(grid_.intervals());
        const double c = 1.0 / (r * std::sqrt(2.0 * std::numbers::pi));
        const double h = grid_.h();
        const bool identity = grid_.psi().kind() == fracops::PsiKind::Identity;
        matrix_.resize(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto ni = static_cast<std::size_t>(i + 1);
                const auto nj = static_cast<std::size_t>(j + 1);
                const double dist = identity ? static_cast<double>(i - j) * h
                                             : grid_.x(ni) - grid_.x(nj);
                const double jac = identity ? 1.0 : grid_.psi().x_prime(grid_.s(nj));
                matrix_(i, j) = h * jac * c * std::exp(-dist * dist / (2.0 * r * r));
            }
        }
    }

    const fracops::GridSpec& grid() const { return grid_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    double kernel_width() const { return r_; }
    Eigen::Index output_size() const { return matrix_.rows(); }

    Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& f) const {
        if (f.size() != matrix_.cols() + 1) throw ConfigError("convolution: state length mismatch");
        return matrix_ * f.tail(matrix_.cols());
    }

private:
    fracops::GridSpec grid_;
    double r_;
    Eigen::MatrixXd matrix_;
};

inline ConvolutionModel build_convolution(const fracops::GridSpec& grid, double r) {
    return ConvolutionModel(grid, r);
}

} // namespace gftg::forward
