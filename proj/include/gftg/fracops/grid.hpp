#pragma once

#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/fracops/psi_map.hpp"

namespace gftg::fracops {

/// N intervals, N+1 nodes, uniform in s = psi(x) on [psi(a), psi(b)].
class GridSpec {
public:
    GridSpec(PsiMap psi, double a, double b, std::size_t intervals)
        : psi_(psi), a_(a), b_(b), intervals_(intervals) {
        psi_.validate_domain(a, b);
        if (intervals < 2) throw ConfigError("grid needs at least 2 intervals");
        s0_ = psi_.psi(a);
        h_ = (psi_.psi(b) - s0_) / static_cast<double>(intervals);
    }

    const PsiMap& psi() const { return psi_; }
    double a() const { return a_; }
    double b() const { return b_; }
    std::size_t intervals() const { return intervals_; }
    std::size_t n_nodes() const { return intervals_ + 1; }

    /// Spacing in s.
    double h() const { return h_; }

    double s(std::size_t j) const { return s0_ + static_cast<double>(j) * h_; }

    /// Physical location of node j. The endpoints are returned exactly.
    double x(std::size_t j) const {
        if (j == 0) return a_;
        if (j == intervals_) return b_;
        return psi_.inverse(s(j));
    }

    /// Quadrature weight for dx at node j: x'(s_j) h.
    double dx(std::size_t j) const { return psi_.x_prime(s(j)) * h_; }

    Eigen::VectorXd nodes() const {
        Eigen::VectorXd xs(n_nodes());
        for (std::size_t j = 0; j < n_nodes(); ++j) xs[j] = x(j);
        return xs;
    }

    friend bool operator==(const GridSpec& l, const GridSpec& r) {
        return l.psi_ == r.psi_ && l.a_ == r.a_ && l.b_ == r.b_ && l.intervals_ == r.intervals_;
    }

private:
    PsiMap psi_;
    double a_;
    double b_;
    std::size_t intervals_;
    double s0_ = 0.0;
    double h_ = 0.0;
};

/// Nodal grid function.
struct Field {
    GridSpec grid;
    Eigen::VectorXd values;

    Field(GridSpec g, Eigen::VectorXd v) : grid(std::move(g)), values(std::move(v)) {
        if (static_cast<std::size_t>(values.size()) != grid.n_nodes())
            throw ConfigError("field length does not match grid node count");
    }

    static Field zeros(const GridSpec& g) {
        return Field(g, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.n_nodes())));
    }

    template <class Fn>
    static Field sample(const GridSpec& g, Fn&& fn) {
        Eigen::VectorXd v(g.n_nodes());
        for (std::size_t j = 0; j < g.n_nodes(); ++j) v[j] = fn(g.x(j));
        return Field(g, std::move(v));
    }
};

inline void require_same_grid(const GridSpec& l, const GridSpec& r) {
    if (!(l == r)) throw ConfigError("grid mismatch");
}

} // namespace gftg::fracops
