#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "radswirl/threshold.hpp"

using namespace radswirl;

namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Independent long-double evaluation of K for grad_u0 = 0, term by term.
long double k_oracle(long double mu, long double beta, long double gamma, long double R, long double a) {
    const long double area = kPiL * R * R;
    const long double M = area * a;
    const long double E = area * std::pow(a, gamma) / (gamma - 1.0L);
    const long double U = 0.0L;
    auto th = [&](long double x) { return 2.0L * mu * std::log(x) + std::pow(x, beta) / beta; };
    const long double t1 = std::max(th(a), th(std::pow((gamma - 1.0L) * E / area, 1.0L / gamma)));
    const long double gb = gamma / beta;
    const long double t2 = std::pow(2.0L, 4.0L / 3.0L) * std::cbrt(R) * std::pow(kPiL, -1.0L / 3.0L) *
                           std::pow(7.0L * mu, 2.0L / (3.0L * beta)) *
                           std::cbrt(U + 3.0L * std::sqrt(2.0L) * std::pow(7.0L, gb) * std::pow(mu, gb - 1.0L) * R * E);
    const long double t3 = std::pow(7.0L * mu, 1.0L / beta) * E / (2.0L * mu * kPiL);
    const long double t4 = (M + 2.0L * E) / (2.0L * kPiL * R);
    const long double t5 = 2.0L * std::pow(M, beta) / (std::pow(area, beta) * (1.0L - beta));
    const long double t6 = M * E / (4.0L * mu * kPiL * kPiL * R * R);
    return t1 + t2 + t3 + t4 + t5 + t6;
}

}  // namespace

TEST(AuxFunctions, Examples) {
    ThresholdInputs in{1.0, 0.5, 2.0, 1.0, 0.0};
    EXPECT_DOUBLE_EQ(theta_mu_beta(1.0, 1.0, 1.0), 1.0);
    EXPECT_NEAR(aux_functions(in, 2.0).Mtilde, 2.0 * std::numbers::pi, 1e-14);
    const AuxValues v = aux_functions(in, 1.0);
    EXPECT_NEAR(v.Etilde, std::numbers::pi, 1e-14);
    EXPECT_EQ(v.Utilde, 0.0);
    EXPECT_THROW(aux_functions(in, 0.0), std::invalid_argument);
    // U~ = pi R^2 / (2 pi)^{3/2} g^3 a
    in.grad_u0_L2 = 2.0;
    EXPECT_NEAR(aux_functions(in, 0.5).Utilde, std::numbers::pi / std::pow(2.0 * std::numbers::pi, 1.5) * 8.0 * 0.5, 1e-14);
}

TEST(K, TermByTermOracle) {
    const ThresholdInputs in{1.0, 0.5, 2.0, 1.0, 0.0};
    const long double oracle = k_oracle(1.0L, 0.5L, 2.0L, 1.0L, 1.0L);
    EXPECT_NEAR(K_of_a(in, 1.0), static_cast<double>(oracle), 1e-12 * std::abs(static_cast<double>(oracle)));
    for (double a : {1e-3, 0.37, 4.2}) {
        const long double o = k_oracle(1.0L, 0.5L, 2.0L, 1.0L, a);
        EXPECT_NEAR(K_of_a(in, a), static_cast<double>(o), 1e-12 * std::abs(static_cast<double>(o)));
    }
}

TEST(K, TendsToMinusInfinityAtZero) {
    const ThresholdInputs in{1.0, 0.5, 2.0, 1.0, 0.7};
    double prev = K_of_a(in, 1e-3);
    for (double a : {1e-6, 1e-12, 1e-24, 1e-48, 1e-96}) {
        const double k = K_of_a(in, a);
        EXPECT_LT(k, prev);
        prev = k;
    }
    // Near zero the energy density ~ a^(1/gamma) wins the max, so K ~ (2 mu / gamma) log a.
    const double slope = (K_of_a(in, 1e-96) - K_of_a(in, 1e-48)) / (std::log(1e-96) - std::log(1e-48));
    EXPECT_NEAR(slope, 2.0 * in.mu / in.gamma, 1e-6);
}

TEST(K, StrictlyIncreasingOnLogGrid) {
    const ThresholdInputs in{0.5, 0.25, 3.0, 1.0, 1.3};
    double prev = -INFINITY;
    for (int k = 0; k < 50; ++k) {
        const double a = std::pow(10.0, -8.0 + 8.0 * k / 49.0);
        const double v = K_of_a(in, a);
        EXPECT_GT(v, prev) << "a = " << a;
        prev = v;
    }
}

TEST(K, RequiresBetaBelowOne) {
    ThresholdInputs in{1.0, 1.0, 2.0, 1.0, 0.0};
    EXPECT_THROW(K_of_a(in, 1.0), std::invalid_argument);
    EXPECT_THROW(solve_a0(in), std::invalid_argument);
}

TEST(SolveA0, RoundTrip) {
    const ThresholdInputs in{1.0, 0.5, 2.0, 1.0, 0.4};
    const ThresholdReport rep = solve_a0(in);
    EXPECT_GT(rep.a0, 0.0);
    EXPECT_LE(std::abs(K_of_a(in, rep.a0) - rep.target), 1e-10 * std::max(1.0, std::abs(rep.target)));
    EXPECT_NEAR(rep.cap, 49.0, 1e-12);
    EXPECT_NEAR(rep.target, 2.0 * std::log(0.99 * 49.0) + 2.0 * std::sqrt(0.99 * 49.0), 1e-12);
}

TEST(SolveA0, LargerGradientGivesSmallerThreshold) {
    double prev = INFINITY;
    for (double g : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const double a0 = solve_a0({1.0, 0.5, 2.0, 1.0, g}).a0;
        EXPECT_LT(a0, prev);
        prev = a0;
    }
}

TEST(SolveA0, MatchesGridScan) {
    const ThresholdInputs in{1.0, 0.5, 2.0, 1.0, 0.0};
    const double target = theta_mu_beta(1.0, 0.5, 0.99 * 49.0);
    // Nested scans: locate the sign change on 1000 log-spaced points, then
    // rescan the bracket linearly three times.
    double lo = 1e-12, hi = 1e3;
    for (int k = 1, found = 0; k <= 1000 && !found; ++k) {
        const double a = 1e-12 * std::pow(1e15, k / 1000.0);
        if (K_of_a(in, a) > target) {
            hi = a;
            found = 1;
        } else {
            lo = a;
        }
    }
    for (int level = 0; level < 3; ++level) {
        const double step = (hi - lo) / 1000.0;
        for (int k = 1; k <= 1000; ++k) {
            const double a = lo + k * step;
            if (K_of_a(in, a) > target) {
                hi = a;
                lo = a - step;
                break;
            }
        }
    }
    const double oracle = 0.5 * (lo + hi);
    EXPECT_NEAR(solve_a0(in).a0, oracle, 1e-8 * oracle);
}

TEST(Verdict, Boundaries) {
    const ThresholdInputs in{1.0, 0.5, 2.0, 1.0, 0.3};
    const ThresholdReport rep = solve_a0(in);
    EXPECT_EQ(admissibility_verdict(rep, 0.0).verdict, Verdict::admitted);
    EXPECT_EQ(admissibility_verdict(rep, rep.a0).verdict, Verdict::admitted);
    EXPECT_EQ(admissibility_verdict(rep, 2.0 * rep.a0).verdict, Verdict::not_admitted);
    EXPECT_EQ(admissibility_verdict(rep, std::nextafter(rep.a0, 1.0)).verdict, Verdict::not_admitted);
    EXPECT_NEAR(admissibility_verdict(in, 0.0).sharp_cap, 0.99 * 49.0, 1e-12);
    EXPECT_THROW(admissibility_verdict(rep, -1.0), std::invalid_argument);
}
