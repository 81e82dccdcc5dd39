#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/forward/tridiagonal.hpp"
#include "gftg/fracops/grid.hpp"

namespace gftg::forward {

/// Coefficient-to-flux map for -u'' + q u = f, u = 0 at both ends. The observation is
/// u'(x) at the interior nodes by central differences (chain rule u_x = u_s / x'(s)).
class EllipticModel {
public:
    EllipticModel(fracops::GridSpec grid, fracops::Field source)
        : grid_(std::move(grid)), source_(std::move(source)),
          laplacian_(transformed_laplacian(grid_)) {
        fracops::require_same_grid(source_.grid, grid_);
    }

    const fracops::GridSpec& grid() const { return grid_; }
    const fracops::Field& source() const { return source_; }
    Eigen::Index output_size() const { return static_cast<Eigen::Index>(grid_.intervals()) - 1; }

    /// Interior system -L + diag(q) for a nodal coefficient q.
    Tridiagonal system(const Eigen::Ref<const Eigen::VectorXd>& q) const {
        check(q);
        Tridiagonal t(laplacian_.size());
        for (std::size_t k = 0; k < t.size(); ++k) {
            t.lower[k] = -laplacian_.lower[k];
            t.upper[k] = -laplacian_.upper[k];
            t.diag[k] = -laplacian_.diag[k] + q[static_cast<Eigen::Index>(k) + 1];
        }
        return t;
    }

    /// Full nodal solution u with u_0 = u_N = 0.
    Eigen::VectorXd solve_state(const Eigen::Ref<const Eigen::VectorXd>& q) const {
        const auto n = static_cast<Eigen::Index>(grid_.n_nodes());
        Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
        u.segment(1, n - 2) = ThomasSolver(system(q)).solve(source_.values.segment(1, n - 2));
        return u;
    }

    Eigen::VectorXd flux(const Eigen::Ref<const Eigen::VectorXd>& u) const {
        const auto n = static_cast<Eigen::Index>(grid_.n_nodes());
        const double h = grid_.h();
        Eigen::VectorXd g(n - 2);
        for (Eigen::Index l = 1; l < n - 1; ++l) {
            const double du_ds = (u[l + 1] - u[l - 1]) / (2.0 * h);
            g[l - 1] = du_ds / grid_.psi().x_prime(grid_.s(static_cast<std::size_t>(l)));
        }
        return g;
    }

    Eigen::VectorXd apply(const Eigen::Ref<const Eigen::VectorXd>& q) const {
        return flux(solve_state(q));
    }

private:
    void check(const Eigen::Ref<const Eigen::VectorXd>& q) const {
        if (static_cast<std::size_t>(q.size()) != grid_.n_nodes())
            throw ConfigError("elliptic: coefficient length mismatch");
    }

    fracops::GridSpec grid_;
    fracops::Field source_;
    Tridiagonal laplacian_;
};

inline fracops::Field elliptic_forward(const fracops::Field& q, const EllipticModel& model) {
    fracops::require_same_grid(q.grid, model.grid());
    Eigen::VectorXd g = Eigen::VectorXd::Zero(q.values.size());
    g.segment(1, q.values.size() - 2) = model.apply(q.values);
    return fracops::Field(q.grid, std::move(g));
}

} // namespace gftg::forward
