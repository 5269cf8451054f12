#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "radswirl/viscous.hpp"
#include "support.hpp"

using namespace radswirl;
using radswirl::testing::sample;

namespace {

double weighted_l2(const RadialGrid& g, const Field& a, const Field& b) {
    Field d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return lp_norm(g, d, 2.0);
}

}  // namespace

namespace {

// Truncation of the operator on a smooth odd field: max error over interior
// cells and over the two end cells, whose one-sided closures are first order.
struct Truncation {
    double interior = 0.0;
    double ends = 0.0;
};

Truncation truncation(const RadialGrid& g, const Field& au, const Field& exact) {
    Truncation t;
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double e = std::abs(au[i] - exact[i]);
        if (i == 0 || i + 1 == n) t.ends = std::max(t.ends, e);
        else t.interior = std::max(t.interior, e);
    }
    return t;
}

}  // namespace

TEST(ViscousOperator, ConstantCoefficientTruncation) {
    // u = sin(pi r): u'' + u'/r - u/r^2 = -pi^2 sin + pi cos / r - sin / r^2.
    const double pi = std::numbers::pi;
    Truncation prev;
    for (std::size_t n : {32u, 64u, 128u, 256u}) {
        const RadialGrid g(n, 1.0);
        const Field au = apply_viscous(g, Field(n, 1.5), sample(g, [pi](double r) { return std::sin(pi * r); }));
        const Field exact = sample(g, [pi](double r) {
            return 1.5 * (-pi * pi * std::sin(pi * r) + pi * std::cos(pi * r) / r - std::sin(pi * r) / (r * r));
        });
        const Truncation t = truncation(g, au, exact);
        if (prev.interior > 0.0) {
            EXPECT_GT(radswirl::testing::log2_ratio(prev.interior, t.interior), 1.8) << "N = " << n;
            EXPECT_GT(radswirl::testing::log2_ratio(prev.ends, t.ends), 0.9) << "N = " << n;
        }
        prev = t;
    }
}

TEST(ViscousOperator, VariableCoefficientTruncation) {
    // kappa = 2 + r^2, u = r (1 - r^2), (r u)'/r = 2 - 4 r^2:
    // d_r(kappa D) = 2r (2 - 4r^2) - 8r (2 + r^2).
    Truncation prev;
    for (std::size_t n : {32u, 64u, 128u, 256u}) {
        const RadialGrid g(n, 1.0);
        const Field au = apply_viscous(g, sample(g, [](double r) { return 2.0 + r * r; }),
                                       sample(g, [](double r) { return r * (1.0 - r * r); }));
        const Field exact = sample(g, [](double r) { return 2.0 * r * (2.0 - 4.0 * r * r) - 8.0 * r * (2.0 + r * r); });
        const Truncation t = truncation(g, au, exact);
        if (prev.interior > 0.0) {
            EXPECT_GT(radswirl::testing::log2_ratio(prev.interior, t.interior), 1.8) << "N = " << n;
            EXPECT_GT(radswirl::testing::log2_ratio(prev.ends, t.ends), 0.9) << "N = " << n;
        }
        prev = t;
    }
}

TEST(ViscousOperator, SolveIsSecondOrder) {
    // kappa = 2 + r^2, u = sin(pi r), D = u' + u / r:
    // d_r(kappa D) = 2r D + kappa (u'' + u'/r - u/r^2). The one-cell
    // first-order closures still give a second-order solution.
    const double pi = std::numbers::pi;
    auto rhs = [pi](double r) {
        const double u = std::sin(pi * r), du = pi * std::cos(pi * r), ddu = -pi * pi * u;
        return 2.0 * r * (du + u / r) + (2.0 + r * r) * (ddu + du / r - u / (r * r));
    };
    double prev = 0.0;
    for (std::size_t n : {32u, 64u, 128u, 256u}) {
        const RadialGrid g(n, 1.0);
        const Tridiagonal a = viscous_operator(g, sample(g, [](double r) { return 2.0 + r * r; }));
        const double err = weighted_l2(g, solve(a, sample(g, rhs)), sample(g, [pi](double r) { return std::sin(pi * r); }));
        if (prev > 0.0) {
            EXPECT_GT(radswirl::testing::log2_ratio(prev, err), 1.8) << "N = " << n;
        }
        prev = err;
    }
}

TEST(ViscousOperator, DissipativeInDiskInnerProduct) {
    const RadialGrid g(50, 1.0);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Field kappa(50), v(50);
        for (std::size_t i = 0; i < 50; ++i) {
            kappa[i] = 1.0 + 2.0 * (u(rng) + 1.0);
            v[i] = u(rng);
        }
        const Field av = apply_viscous(g, kappa, v);
        double s = 0.0;
        for (std::size_t i = 0; i < 50; ++i) s += g.weight(i) * v[i] * av[i];
        EXPECT_LT(s, 0.0);
    }
}

TEST(ImplicitSolve, ResidualAndFailure) {
    const RadialGrid g(40, 1.0);
    const Field kappa(40, 2.0);
    const Tridiagonal a = viscous_operator(g, kappa);
    const Field rho = sample(g, [](double r) { return 1.0 + r; });
    const Field rhs = sample(g, [](double r) { return std::sin(3.0 * r); });
    const double tau = 0.05;
    const Field u = implicit_viscous_solve(a, rho, rhs, tau);
    const Field au = a.apply(u);
    for (std::size_t i = 0; i < 40; ++i) EXPECT_NEAR(rho[i] * u[i] - tau * au[i], rhs[i], 1e-12);
    EXPECT_THROW(implicit_viscous_solve(a, Field(40, -1.0), rhs, tau), LinearSolveError);
}

TEST(ViscousSubstep, ThetaWeightsBracketExactDecay) {
    // Pure swirl diffusion of the first Bessel-like mode decays; both weights shrink the L2 norm.
    const RadialGrid g(64, 1.0);
    const Field rho(64, 1.0), kappa(64, 1.0);
    const Field u0 = sample(g, [](double r) { return r * (1.0 - r * r); });
    for (double theta : {0.5, 1.0}) {
        const Field u1 = viscous_substep(g, rho, kappa, u0, 1e-2, theta);
        EXPECT_LT(lp_norm(g, u1, 2.0), lp_norm(g, u0, 2.0));
    }
}
