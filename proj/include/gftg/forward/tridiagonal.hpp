#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/fracops/grid.hpp"

namespace gftg::forward {

/// Tridiagonal matrix by bands; lower[0] and upper[n-1] are unused.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}

    std::size_t size() const { return diag.size(); }

    Eigen::VectorXd multiply(const Eigen::Ref<const Eigen::VectorXd>& x) const {
        const std::size_t n = size();
        Eigen::VectorXd y(static_cast<Eigen::Index>(n));
        for (std::size_t i = 0; i < n; ++i) {
            double v = diag[i] * x[i];
            if (i > 0) v += lower[i] * x[i - 1];
            if (i + 1 < n) v += upper[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }
};

/// Thomas elimination factored once, reusable for many right-hand sides.
class ThomasSolver {
public:
    explicit ThomasSolver(const Tridiagonal& m) : lower_(m.lower), c_(m.size()), inv_(m.size()) {
        const std::size_t n = m.size();
        if (n == 0) throw NumericalError("empty tridiagonal system");
        double pivot = m.diag[0];
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) pivot = m.diag[i] - m.lower[i] * c_[i - 1];
            if (!std::isfinite(pivot) || std::abs(pivot) < 1e-300)
                throw NumericalError("singular tridiagonal system (zero pivot at row " +
                                     std::to_string(i) + ")");
            inv_[i] = 1.0 / pivot;
            c_[i] = (i + 1 < n) ? m.upper[i] * inv_[i] : 0.0;
        }
    }

    Eigen::VectorXd solve(const Eigen::Ref<const Eigen::VectorXd>& rhs) const {
        const std::size_t n = c_.size();
        Eigen::VectorXd x(static_cast<Eigen::Index>(n));
        x[0] = rhs[0] * inv_[0];
        for (std::size_t i = 1; i < n; ++i) x[i] = (rhs[i] - lower_[i] * x[i - 1]) * inv_[i];
        for (std::size_t i = n - 1; i-- > 0;) x[i] -= c_[i] * x[i + 1];
        return x;
    }

private:
    std::vector<double> lower_;
    std::vector<double> c_;
    std::vector<double> inv_;
};

/// Central-difference stencil of u_xx on an s-uniform grid, written in s:
///   u_xx = x'^{-2} u_ss - x'^{-3} x'' u_s.
/// Rows correspond to interior nodes 1..N-1; Dirichlet ends are dropped.
inline Tridiagonal transformed_laplacian(const fracops::GridSpec& grid) {
    const std::size_t m = grid.intervals() - 1;
    const double h = grid.h();
    Tridiagonal t(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double s = grid.s(k + 1);
        const double xp = grid.psi().x_prime(s);
        const double a = 1.0 / (xp * xp);
        const double b = grid.psi().x_second(s) / (xp * xp * xp);
        t.lower[k] = a / (h * h) + b / (2.0 * h);
        t.diag[k] = -2.0 * a / (h * h);
        t.upper[k] = a / (h * h) - b / (2.0 * h);
    }
    return t;
}

} // namespace gftg::forward
