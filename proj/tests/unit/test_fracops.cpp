#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "gftg/fracops/functionals.hpp"
#include "gftg/fracops/grid.hpp"
#include "gftg/fracops/grunwald.hpp"
#include "gftg/fracops/psi_map.hpp"
#include "gftg/fracops/riesz.hpp"

using namespace gftg::fracops;

namespace {

/// (-1)^j alpha (alpha-1) ... (alpha-j+1) / j!, numerator and factorial kept apart.
long double binomial_weight(double alpha, int j) {
    long double num = 1.0L;
    long double fact = 1.0L;
    for (int k = 0; k < j; ++k) {
        num *= static_cast<long double>(alpha) - k;
        fact *= k + 1;
    }
    return ((j % 2) ? -1.0L : 1.0L) * num / fact;
}

/// Direct evaluation of the two one-sided Grünwald sums at interior node l.
double riesz_by_sums(const Eigen::VectorXd& u, double alpha, int n, double h, int l) {
    const int N = static_cast<int>(u.size()) - 1;
    auto w = [&](int j) { return static_cast<double>(binomial_weight(alpha, j)); };
    double left = 0.0, right = 0.0;
    if (n == 1) {
        for (int j = 0; j <= l; ++j) left += w(j) * u[l - j];
        for (int j = 0; j <= N - l; ++j) right += w(j) * u[l + j];
        return (left - right) / (2.0 * std::pow(h, alpha));
    }
    for (int j = 0; j <= l + 1; ++j) left += w(j) * u[l - j + 1];
    for (int j = 0; j <= N - l + 1; ++j) right += w(j) * u[l + j - 1];
    return (left + right) / (2.0 * std::pow(h, alpha));
}

Eigen::VectorXd random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> d;
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

} // namespace

TEST(PsiMap, IdentityLogExpValues) {
    EXPECT_DOUBLE_EQ(make_psi_map(PsiKind::Identity).psi(1.5), 1.5);

    const PsiMap ln = make_psi_map(PsiKind::Log);
    EXPECT_NEAR(ln.psi(std::numbers::e), 1.0, 1e-15);
    EXPECT_NEAR(ln.x_prime(1.0), std::numbers::e, 1e-15);

    const PsiMap ex = make_psi_map(PsiKind::Exp);
    EXPECT_DOUBLE_EQ(ex.psi(0.0), 1.0);
    EXPECT_DOUBLE_EQ(ex.x_second(2.0), -0.25);
}

TEST(PsiMap, SecondDerivativeMatchesFiniteDifferences) {
    for (auto kind : {PsiKind::Identity, PsiKind::Log, PsiKind::Exp}) {
        const PsiMap m(kind);
        const double s = kind == PsiKind::Exp ? 2.0 : 0.7;
        const double e = 1e-4;
        const double fd2 = (m.inverse(s + e) - 2.0 * m.inverse(s) + m.inverse(s - e)) / (e * e);
        const double fd1 = (m.inverse(s + e) - m.inverse(s - e)) / (2.0 * e);
        EXPECT_NEAR(m.x_second(s), fd2, 1e-5) << to_string(kind);
        EXPECT_NEAR(m.x_prime(s), fd1, 1e-7) << to_string(kind);
    }
}

TEST(PsiMap, InvariantsOnGridNodes) {
    for (auto kind : {PsiKind::Identity, PsiKind::Log, PsiKind::Exp}) {
        const GridSpec g(PsiMap(kind), 1.0, 3.0, 200);
        const PsiMap& m = g.psi();
        for (std::size_t j = 0; j < g.n_nodes(); ++j) {
            const double x = g.x(j);
            EXPECT_NEAR(m.inverse(m.psi(x)), x, 1e-12);
            EXPECT_NEAR(m.x_prime(g.s(j)), 1.0 / m.psi_prime(m.inverse(g.s(j))), 1e-12);
            if (j > 0) EXPECT_GT(m.psi(x), m.psi(g.x(j - 1)));
        }
    }
}

TEST(PsiMap, LogRejectsNonPositiveDomain) {
    EXPECT_THROW(GridSpec(PsiMap(PsiKind::Log), 0.0, 1.0, 10), gftg::ConfigError);
    EXPECT_THROW(GridSpec(PsiMap(PsiKind::Log), -1.0, 1.0, 10), gftg::ConfigError);
    EXPECT_NO_THROW(GridSpec(PsiMap(PsiKind::Exp), -1.0, 1.0, 10));
}

TEST(GridSpec, SpacingAndNodes) {
    const GridSpec g(PsiMap(PsiKind::Identity), 1.0, 2.0, 100);
    EXPECT_DOUBLE_EQ(g.h(), 0.01);
    EXPECT_EQ(g.n_nodes(), 101u);
    EXPECT_NEAR(g.x(20), 1.2, 1e-14);

    const GridSpec gl(PsiMap(PsiKind::Log), 1.0, 2.0, 100);
    EXPECT_NEAR(gl.h(), std::log(2.0) / 100.0, 1e-16);
    EXPECT_NEAR(gl.x(50), std::exp(50 * gl.h()), 1e-14);
    EXPECT_DOUBLE_EQ(gl.x(100), 2.0);
}

TEST(FracOrder, RejectsIntegerAndOutOfRange) {
    EXPECT_THROW(FracOrder::make(1.0), gftg::ConfigError);
    EXPECT_THROW(FracOrder::make(2.0), gftg::ConfigError);
    EXPECT_THROW(FracOrder::make(2.5), gftg::ConfigError);
    EXPECT_THROW(FracOrder::make(0.0), gftg::ConfigError);
    EXPECT_EQ(FracOrder::make(0.9).n, 1);
    EXPECT_EQ(FracOrder::make(1.1).n, 2);
}

TEST(Grunwald, AlphaOneIsFirstDifference) {
    const auto w = grunwald_weights(1.0, 50);
    EXPECT_EQ(w[0], 1.0);
    EXPECT_EQ(w[1], -1.0);
    for (std::size_t j = 2; j < w.size(); ++j) EXPECT_EQ(w[j], 0.0);
}

TEST(Grunwald, HalfOrderHandValues) {
    const auto w = grunwald_weights(0.5, 4);
    EXPECT_DOUBLE_EQ(w[0], 1.0);
    EXPECT_DOUBLE_EQ(w[1], -0.5);
    EXPECT_DOUBLE_EQ(w[2], -0.125);
    EXPECT_NEAR(w[2], static_cast<double>(binomial_weight(0.5, 2)), 1e-16);
}

TEST(Grunwald, RecursionMatchesClosedForm) {
    for (double alpha : {0.1, 0.5, 0.9, 1.1, 1.5, 1.9}) {
        const auto w = grunwald_weights(alpha, 400);
        for (int j = 0; j <= 400; ++j)
            ASSERT_NEAR(w[j], static_cast<double>(binomial_weight(alpha, j)), 1e-12)
                << "alpha=" << alpha << " j=" << j;
    }
}

TEST(Grunwald, SignPatternBelowOne) {
    for (double alpha : {0.1, 0.5, 0.9}) {
        const auto w = grunwald_weights(alpha, 400);
        double partial = w[0];
        EXPECT_EQ(w[0], 1.0);
        for (std::size_t j = 1; j < w.size(); ++j) {
            EXPECT_LT(w[j], 0.0);
            partial += w[j];
            EXPECT_GT(partial, 0.0);
        }
    }
}

TEST(Riesz, MatrixMatchesDirectSums) {
    std::mt19937_64 rng(7);
    for (double alpha : {0.3, 0.9, 1.2, 1.8}) {
        const auto order = FracOrder::make(alpha);
        const GridSpec g(PsiMap(PsiKind::Identity), 1.0, 2.0, 30);
        const RieszOperator op(g, order);
        const Eigen::VectorXd u = random_vector(31, rng);
        const Eigen::VectorXd du = op.apply(u);
        for (int l = 1; l < 30; ++l)
            EXPECT_NEAR(du[l], riesz_by_sums(u, alpha, order.n, g.h(), l), 1e-9 * (1 + std::abs(du[l])));
        EXPECT_EQ(du[0], du[1]);
        EXPECT_EQ(du[30], du[29]);
    }
}

TEST(Riesz, ZeroInZeroOut) {
    const GridSpec g(PsiMap(PsiKind::Exp), 1.0, 2.0, 40);
    const RieszOperator op(g, FracOrder::make(0.7));
    const Field d = riesz_derivative(Field::zeros(g), op);
    EXPECT_EQ(d.values.cwiseAbs().maxCoeff(), 0.0);
}

TEST(Riesz, Linearity) {
    std::mt19937_64 rng(11);
    for (double alpha : {0.4, 1.6}) {
        const GridSpec g(PsiMap(PsiKind::Log), 1.0, 3.0, 64);
        const RieszOperator op(g, FracOrder::make(alpha));
        for (int trial = 0; trial < 20; ++trial) {
            const Eigen::VectorXd u = random_vector(65, rng);
            const Eigen::VectorXd v = random_vector(65, rng);
            const double k = 1.7, l = -0.3;
            const Eigen::VectorXd lhs = op.apply(k * u + l * v);
            const Eigen::VectorXd rhs = k * op.apply(u) + l * op.apply(v);
            EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9 * (1.0 + rhs.cwiseAbs().maxCoeff()));
        }
    }
}

TEST(Riesz, AlphaOneDegeneratesToCentralDifference) {
    const GridSpec g(PsiMap(PsiKind::Identity), 1.0, 2.0, 50);
    const RieszOperator op(g, FracOrder::with_scheme(1.0, 1));
    std::mt19937_64 rng(3);
    const Eigen::VectorXd u = random_vector(51, rng);
    const Eigen::VectorXd du = op.apply(u);
    for (int l = 1; l < 50; ++l)
        EXPECT_NEAR(du[l], (u[l + 1] - u[l - 1]) / (2.0 * g.h()), 1e-12 * (1 + std::abs(du[l])));
}

TEST(Riesz, ShiftedSchemeAtAlphaOneIsNotCentral) {
    const GridSpec g(PsiMap(PsiKind::Identity), 0.0, 1.0, 20);
    const RieszOperator op(g, FracOrder::with_scheme(1.0, 2));
    const Field u = Field::sample(g, [](double x) { return x * x; });
    const Eigen::VectorXd du = op.apply(u.values);
    EXPECT_GT(std::abs(du[10] - 2.0 * g.x(10)), 0.1);
}

TEST(Riesz, PsiTransformConsistency) {
    // psi = ln x on [1, 3] versus psi = x on [0, ln 3] acting on u(e^s).
    auto u = [](double x) { return std::sin(2.0 * x) + x * x; };
    for (double alpha : {0.6, 1.4}) {
        const GridSpec gl(PsiMap(PsiKind::Log), 1.0, 3.0, 80);
        const GridSpec gs(PsiMap(PsiKind::Identity), 0.0, std::log(3.0), 80);
        const RieszOperator opl(gl, FracOrder::make(alpha));
        const RieszOperator ops(gs, FracOrder::make(alpha));
        const Field fl = Field::sample(gl, u);
        const Field fs = Field::sample(gs, [&](double s) { return u(std::exp(s)); });
        const Eigen::VectorXd a = riesz_derivative(fl, opl).values;
        const Eigen::VectorXd b = riesz_derivative(fs, ops).values;
        for (Eigen::Index j = 0; j < a.size(); ++j)
            EXPECT_NEAR(a[j], b[j], 1e-12 * (1.0 + std::abs(b[j])));
    }
}

TEST(Riesz, GridMismatchThrows) {
    const GridSpec g1(PsiMap(PsiKind::Identity), 1.0, 2.0, 10);
    const GridSpec g2(PsiMap(PsiKind::Identity), 1.0, 2.0, 12);
    const RieszOperator op(g1, FracOrder::make(0.5));
    EXPECT_THROW(riesz_derivative(Field::zeros(g2), op), gftg::ConfigError);
    EXPECT_THROW(ftv(Field::zeros(g2), op), gftg::ConfigError);
}

TEST(Ftv, HandEvaluatedSpike) {
    // N = 4 on [0, 1], alpha = 0.5, u = e_1. With h^{1/2} = 1/2 the prefactor is 1:
    //   l=1: (w0) - (w0) = 0;  l=2: w1 = -1/2;  l=3: w2 = -1/8;  FTV = h (0 + 1/2 + 1/8).
    const GridSpec g(PsiMap(PsiKind::Identity), 0.0, 1.0, 4);
    const RieszOperator op(g, FracOrder::make(0.5));
    Field u = Field::zeros(g);
    u.values[1] = 1.0;

    double brute = 0.0;
    for (int l = 1; l < 4; ++l) brute += std::abs(riesz_by_sums(u.values, 0.5, 1, 0.25, l)) * 0.25;
    EXPECT_NEAR(brute, 0.15625, 1e-15);
    EXPECT_NEAR(ftv(u, op), 0.15625, 1e-14);
}

TEST(Ftv, ZeroAndHomogeneity) {
    std::mt19937_64 rng(5);
    const GridSpec g(PsiMap(PsiKind::Exp), 1.0, 2.0, 50);
    const RieszOperator op(g, FracOrder::make(1.3));
    EXPECT_EQ(ftv(Field::zeros(g), op), 0.0);
    const Field u(g, random_vector(51, rng));
    for (double c : {-3.0, 0.5, 2.0}) {
        const Field cu(g, c * u.values);
        EXPECT_NEAR(ftv(cu, op), std::abs(c) * ftv(u, op), 1e-12 * ftv(u, op) * std::abs(c));
        EXPECT_GE(ftv(cu, op), 0.0);
    }
}

TEST(Ftv, JacobianWeightReducesToSpacingForIdentity) {
    const GridSpec g(PsiMap(PsiKind::Identity), 1.0, 2.0, 10);
    const Eigen::VectorXd w = interior_dx_weights(g);
    EXPECT_EQ(w[0], 0.0);
    EXPECT_EQ(w[10], 0.0);
    for (int l = 1; l < 10; ++l) EXPECT_DOUBLE_EQ(w[l], g.h());
}

TEST(TotalVariation, ForwardDifferences) {
    Eigen::VectorXd u(4);
    u << 0.0, 1.0, -1.0, -1.0;
    EXPECT_DOUBLE_EQ(total_variation(u), 3.0);
}

TEST(Sobolev, ZeroNormAndInnerProduct) {
    std::mt19937_64 rng(9);
    const GridSpec g(PsiMap(PsiKind::Log), 1.0, 3.0, 60);
    const RieszOperator op(g, FracOrder::make(0.8));
    EXPECT_EQ(sobolev_norm(Field::zeros(g), op, 2), 0.0);
    EXPECT_EQ(sobolev_norm(Field::zeros(g), op, 1), 0.0);
    const Field u(g, random_vector(61, rng));
    const double n2 = sobolev_norm(u, op, 2);
    EXPECT_NEAR(n2 * n2, sobolev_inner(u, u, op), 1e-12 * n2 * n2);
    EXPECT_THROW(sobolev_norm(u, op, 3), gftg::ConfigError);
}

TEST(Sobolev, EmbeddingInequality) {
    std::mt19937_64 rng(2024);
    for (auto kind : {PsiKind::Identity, PsiKind::Log, PsiKind::Exp}) {
        for (double alpha : {0.5, 0.9, 1.5}) {
            const GridSpec g(PsiMap(kind), 1.0, 2.0, 100);
            const RieszOperator op(g, FracOrder::make(alpha));
            const double c = std::sqrt(2.0 * (g.b() - g.a()));
            for (int trial = 0; trial < 100; ++trial) {
                const Field u(g, random_vector(101, rng));
                EXPECT_LE(sobolev_norm(u, op, 1), c * sobolev_norm(u, op, 2));
            }
        }
    }
}

namespace {

/// Relative residual of the discrete fractional integration-by-parts identity
///   ∫ psi' f D g dx = (-1)^n ∫ psi' (D f) g dx
/// with dx-quadrature x'(s) h, so that psi' dx collapses to the s-spacing.
double ibp_residual(PsiKind kind, double alpha, std::size_t n_intervals) {
    const GridSpec g(PsiMap(kind), 1.0, 2.25, n_intervals);
    const RieszOperator op(g, FracOrder::make(alpha));
    const Field f = Field::sample(g, [](double x) { return std::sin(2.0 * std::numbers::pi * x); });
    const Field bump = Field::sample(g, [](double x) {
        const double lo = 1.3, hi = 1.95;
        if (x <= lo || x >= hi) return 0.0;
        return std::pow(std::sin(std::numbers::pi * (x - lo) / (hi - lo)), 4);
    });
    const Eigen::VectorXd df = op.apply(f.values);
    const Eigen::VectorXd dg = op.apply(bump.values);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t l = 1; l < g.intervals(); ++l) {
        const double w = g.psi().psi_prime(g.x(l)) * g.dx(l);
        lhs += w * f.values[l] * dg[l];
        rhs += w * df[l] * bump.values[l];
    }
    const double sign = op.order().n == 1 ? -1.0 : 1.0;
    return std::abs(lhs - sign * rhs) / std::abs(lhs);
}

} // namespace

TEST(Sobolev, DiscreteIntegrationByPartsConverges) {
    for (auto kind : {PsiKind::Identity, PsiKind::Log}) {
        for (double alpha : {0.5, 1.5}) {
            const double r100 = ibp_residual(kind, alpha, 100);
            const double r200 = ibp_residual(kind, alpha, 200);
            EXPECT_LT(r200, r100) << to_string(kind) << " alpha=" << alpha;
            EXPECT_LT(r200, 0.05);
        }
    }
}
