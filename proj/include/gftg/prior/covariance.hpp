#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "gftg/error.hpp"
#include "gftg/fracops/grid.hpp"
#include "gftg/random.hpp"

namespace gftg::prior {

/// Squared-exponential covariance c(x1,x2) = gamma exp(-((x1-x2)/d)^2 / 2) on the
/// physical node positions, with a Cholesky factor for drawing N(0, C0).
class CovarianceOperator {
public:
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    const Eigen::MatrixXd& factor() const { return factor_; }
    double gamma() const { return gamma_; }
    double corr_length() const { return d_; }
    /// Diagonal regulariser actually used (after any escalation).
    double jitter() const { return jitter_; }
    Eigen::Index dim() const { return matrix_.rows(); }

    /// factor * z.
    Eigen::VectorXd transform(const Eigen::Ref<const Eigen::VectorXd>& z) const {
        return factor_.triangularView<Eigen::Lower>() * z;
    }

    Eigen::VectorXd sample(Rng& rng) const {
        std::normal_distribution<double> normal;
        Eigen::VectorXd z(dim());
        for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
        return transform(z);
    }

private:
    friend CovarianceOperator build_covariance(const fracops::GridSpec&, double, double, double);

    Eigen::MatrixXd matrix_;
    Eigen::MatrixXd factor_;
    double gamma_ = 0.0;
    double d_ = 0.0;
    double jitter_ = 0.0;
};

inline Eigen::MatrixXd squared_exponential(const Eigen::VectorXd& xs, double gamma, double d) {
    const auto n = xs.size();
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double r = (xs[i] - xs[j]) / d;
            c(i, j) = c(j, i) = gamma * std::exp(-0.5 * r * r);
        }
    }
    return c;
}

/// Builds the covariance and factorises it. The kernel is numerically rank deficient
/// for d of a few grid spacings, so a failed factorisation retries with the jitter
/// raised tenfold (starting no lower than 1e-10 gamma) until it exceeds 1e-4 gamma.
inline CovarianceOperator build_covariance(const fracops::GridSpec& grid, double gamma, double d,
                                           double jitter) {
    if (!(gamma > 0.0)) throw ConfigError("covariance amplitude gamma must be positive");
    if (!(d > 0.0)) throw ConfigError("covariance correlation length d must be positive");
    if (!(jitter >= 0.0)) throw ConfigError("covariance jitter must be non-negative");

    const Eigen::MatrixXd base = squared_exponential(grid.nodes(), gamma, d);
    const double max_jitter = 1e-4 * gamma;
    const Eigen::Index n = base.rows();

    double current = jitter;
    for (;;) {
        Eigen::MatrixXd m = base;
        m.diagonal().array() += current;
        Eigen::LLT<Eigen::MatrixXd> llt(m);
        if (llt.info() == Eigen::Success) {
            Eigen::MatrixXd l = llt.matrixL();
            if (l.allFinite() && (l * l.transpose() - m).cwiseAbs().maxCoeff() <= 1e-8) {
                CovarianceOperator cov;
                cov.matrix_ = std::move(m);
                cov.factor_ = std::move(l);
                cov.gamma_ = gamma;
                cov.d_ = d;
                cov.jitter_ = current;
                return cov;
            }
        }
        if (current >= max_jitter) break;
        current = std::min(max_jitter, std::max(current * 10.0, 1e-10 * gamma));
    }
    throw ConfigError("covariance factorisation failed for n = " + std::to_string(n) +
                      " even with jitter " + std::to_string(max_jitter));
}

inline fracops::Field sample_gaussian(const CovarianceOperator& cov, const fracops::GridSpec& grid,
                                      Rng& rng) {
    return fracops::Field(grid, cov.sample(rng));
}

} // namespace gftg::prior
