#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/forward/tridiagonal.hpp"
#include "gftg/fracops/grid.hpp"

namespace gftg::forward {

/// theta-scheme for u_t = u_xx + f(x) with homogeneous Dirichlet ends, stepped on the
/// s-uniform grid in the transformed form u_t = x'^{-2} u_ss - x'^{-3} x'' u_s + f.
class HeatStepper {
public:
    HeatStepper(fracops::GridSpec grid, std::size_t time_steps, double final_time, double theta)
        : grid_(std::move(grid)), steps_(time_steps), final_time_(final_time), theta_(theta),
          laplacian_(transformed_laplacian(grid_)), lhs_(implicit_matrix()) {}

    const fracops::GridSpec& grid() const { return grid_; }
    std::size_t time_steps() const { return steps_; }
    double final_time() const { return final_time_; }
    double theta() const { return theta_; }
    double dt() const { return final_time_ / static_cast<double>(steps_); }

    /// u(., T) at all nodes (ends are zero) for a time-independent source.
    Eigen::VectorXd propagate(const Eigen::Ref<const Eigen::VectorXd>& source,
                              const Eigen::Ref<const Eigen::VectorXd>& initial) const {
        const auto n = static_cast<Eigen::Index>(grid_.n_nodes());
        if (source.size() != n || initial.size() != n)
            throw ConfigError("heat: field length does not match grid");
        const Eigen::Index m = n - 2;
        const double k = dt();
        const Eigen::VectorXd forcing = k * source.segment(1, m);
        Eigen::VectorXd u = initial.segment(1, m);
        for (std::size_t step = 0; step < steps_; ++step) {
            Eigen::VectorXd rhs = u + (1.0 - theta_) * k * laplacian_.multiply(u) + forcing;
            u = lhs_.solve(rhs);
        }
        Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
        full.segment(1, m) = u;
        return full;
    }

private:
    ThomasSolver implicit_matrix() const {
        if (!(theta_ >= 0.0 && theta_ <= 1.0)) throw ConfigError("theta must lie in [0, 1]");
        if (steps_ == 0 || !(final_time_ > 0.0))
            throw ConfigError("heat solve needs time_steps >= 1 and T > 0");
        const double k = dt();
        Tridiagonal a = laplacian_;
        for (std::size_t i = 0; i < a.size(); ++i) {
            a.lower[i] *= -theta_ * k;
            a.upper[i] *= -theta_ * k;
            a.diag[i] = 1.0 - theta_ * k * a.diag[i];
        }
        return ThomasSolver(a);
    }

    fracops::GridSpec grid_;
    std::size_t steps_;
    double final_time_;
    double theta_;
    Tridiagonal laplacian_;
    ThomasSolver lhs_;
};

/// Source-to-final-temperature map G(f) = A f + b0, observed at interior nodes.
/// A is assembled column by column by propagating unit sources with zero initial data;
/// b0 is the propagated initial temperature with zero source.
class HeatSourceModel {
public:
    HeatSourceModel(const HeatStepper& stepper, const fracops::Field& phi) : grid_(stepper.grid()) {
        fracops::require_same_grid(phi.grid, grid_);
        const auto n = static_cast<Eigen::Index>(grid_.n_nodes());
        const Eigen::Index m = n - 2;
        const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
        matrix_ = Eigen::MatrixXd::Zero(m, n);
        Eigen::VectorXd unit = Eigen::VectorXd::Zero(n);
        for (Eigen::Index j = 1; j < n - 1; ++j) {
            unit[j] = 1.0;
            matrix_.col(j) = stepper.propagate(unit, zero).segment(1, m);
            unit[j] = 0.0;
        }
        offset_ = stepper.propagate(zero, phi.values).segment(1, m);
        time_steps_ = stepper.time_steps();
        final_time_ = stepper.final_time();
        theta_ = stepper.theta();
    }

    const fracops::GridSpec& grid() const { return grid_; }
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::VectorXd& offset() const { return offset_; }
    Eigen::Index output_size() const { return matrix_.rows(); }
    std::size_t time_steps() const { return time_steps_; }
    double final_time() const { return final_time_; }
    double theta() const { return theta_; }

    Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& f) const {
        if (f.size() != matrix_.cols()) throw ConfigError("heat: state length mismatch");
        return matrix_ * f + offset_;
    }

private:
    fracops::GridSpec grid_;
    Eigen::MatrixXd matrix_;
    Eigen::VectorXd offset_;
    std::size_t time_steps_ = 0;
    double final_time_ = 0.0;
    double theta_ = 0.5;
};

inline HeatSourceModel heat_forward_build(const fracops::GridSpec& grid, std::size_t time_steps,
                                          double final_time, double theta,
                                          const fracops::Field& phi) {
    return HeatSourceModel(HeatStepper(grid, time_steps, final_time, theta), phi);
}

} // namespace gftg::forward
