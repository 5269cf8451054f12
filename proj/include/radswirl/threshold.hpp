/// @file threshold.hpp
/// @brief Explicit smallness threshold a0 on sup rho0 for 0 < beta < 1.
///
/// K(a) bounds theta(sup rho) along particle paths for initial data with
/// sup rho0 <= a; a0 solves K(a0) = theta(0.99 (7 mu)^{1/beta}). K is strictly
/// increasing with K(0+) = -inf, so a0 is unique and bisection is exact up to
/// the tolerance.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace radswirl {

struct ThresholdInputs {
    double mu = 1.0;
    double beta = 0.5;
    double gamma = 2.0;
    double R = 1.0;
    double grad_u0_L2 = 0.0;

    void validate() const {
        if (!(mu > 0.0)) throw std::invalid_argument("threshold: mu must be > 0");
        if (!(beta > 0.0 && beta < 1.0))
            throw std::invalid_argument("threshold: requires 0 < beta < 1 (for beta >= 1 no smallness threshold is needed)");
        if (!(gamma > 1.0)) throw std::invalid_argument("threshold: gamma must be > 1");
        if (!(R > 0.0)) throw std::invalid_argument("threshold: R must be > 0");
        if (!(grad_u0_L2 >= 0.0) || !std::isfinite(grad_u0_L2))
            throw std::invalid_argument("threshold: ||grad u0||_L2 must be finite and >= 0");
    }
};

struct AuxValues {
    double theta = 0.0;
    double Mtilde = 0.0;
    double Etilde = 0.0;
    double Utilde = 0.0;
};

/// The summands of K(a), in display order.
struct KTerms {
    double theta_a = 0.0;        ///< theta(a)
    double theta_energy = 0.0;   ///< theta(((gamma-1) E~ / (pi R^2))^{1/gamma})
    double max_term = 0.0;       ///< max of the two above
    double xi_term = 0.0;        ///< 2^{4/3} R^{1/3} pi^{-1/3} (7mu)^{2/(3beta)} (U~ + 3 sqrt2 7^{g/b} mu^{g/b-1} R E~)^{1/3}
    double swirl_term = 0.0;     ///< (7mu)^{1/beta} E~ / (2 mu pi)
    double boundary_term = 0.0;  ///< (M~ + 2 E~) / (2 pi R)
    double mass_term = 0.0;      ///< 2 M~^beta / ((pi R^2)^beta (1 - beta))
    double product_term = 0.0;   ///< M~ E~ / (4 mu pi^2 R^2)

    double sum() const { return max_term + xi_term + swirl_term + boundary_term + mass_term + product_term; }
};

inline double theta_mu_beta(double mu, double beta, double a) { return 2.0 * mu * std::log(a) + std::pow(a, beta) / beta; }

inline AuxValues aux_functions(const ThresholdInputs& in, double a) {
    if (!(a > 0.0)) throw std::invalid_argument("aux_functions: a must be > 0");
    const double area = std::numbers::pi * in.R * in.R;
    const double g = in.grad_u0_L2;
    AuxValues v;
    v.theta = theta_mu_beta(in.mu, in.beta, a);
    v.Mtilde = area * a;
    v.Etilde = area / (in.gamma - 1.0) * std::pow(a, in.gamma) + 0.25 * in.R * in.R * g * g * a;
    v.Utilde = area / std::pow(2.0 * std::numbers::pi, 1.5) * g * g * g * a;
    return v;
}

inline KTerms K_terms(const ThresholdInputs& in, double a) {
    in.validate();
    const AuxValues v = aux_functions(in, a);
    const double pi = std::numbers::pi;
    const double R = in.R, mu = in.mu, beta = in.beta, gamma = in.gamma;
    const double area = pi * R * R;
    const double gb = gamma / beta;
    KTerms k;
    k.theta_a = v.theta;
    const double rho_energy = std::pow((gamma - 1.0) * v.Etilde / area, 1.0 / gamma);
    k.theta_energy = theta_mu_beta(mu, beta, rho_energy);
    k.max_term = std::max(k.theta_a, k.theta_energy);
    k.xi_term = std::pow(2.0, 4.0 / 3.0) * std::cbrt(R) / std::cbrt(pi) * std::pow(7.0 * mu, 2.0 / (3.0 * beta)) *
                std::cbrt(v.Utilde + 3.0 * std::numbers::sqrt2 * std::pow(7.0, gb) * std::pow(mu, gb - 1.0) * R * v.Etilde);
    k.swirl_term = std::pow(7.0 * mu, 1.0 / beta) * v.Etilde / (2.0 * mu * pi);
    k.boundary_term = (v.Mtilde + 2.0 * v.Etilde) / (2.0 * pi * R);
    k.mass_term = 2.0 * std::pow(v.Mtilde, beta) / (std::pow(area, beta) * (1.0 - beta));
    k.product_term = v.Mtilde * v.Etilde / (4.0 * mu * pi * pi * R * R);
    return k;
}

inline double K_of_a(const ThresholdInputs& in, double a) { return K_terms(in, a).sum(); }

struct ThresholdReport {
    double a0 = 0.0;
    double cap = 0.0;        ///< (7 mu)^{1/beta}
    double sharp_cap = 0.0;  ///< 0.99 (7 mu)^{1/beta}
    double target = 0.0;     ///< theta(0.99 (7 mu)^{1/beta})
    double residual = 0.0;   ///< K(a0) - target
    KTerms terms;
    int iterations = 0;
};

inline constexpr double kThresholdRelTol = 1e-10;

inline ThresholdReport solve_a0(const ThresholdInputs& in) {
    in.validate();
    ThresholdReport rep;
    rep.cap = std::pow(7.0 * in.mu, 1.0 / in.beta);
    rep.sharp_cap = 0.99 * rep.cap;
    rep.target = theta_mu_beta(in.mu, in.beta, rep.sharp_cap);
    const double tol = kThresholdRelTol * std::max(1.0, std::abs(rep.target));

    double lo = 1.0, hi = 1.0;
    int expansions = 0;
    while (K_of_a(in, hi) <= rep.target) {
        hi *= 2.0;
        if (++expansions > 200) throw std::runtime_error("solve_a0: target not bracketed from above");
    }
    lo = hi;
    expansions = 0;
    while (K_of_a(in, lo) > rep.target) {
        lo *= 0.5;
        if (++expansions > 200) throw std::runtime_error("solve_a0: target not bracketed from below");
    }
    // Invariant: K(lo) <= target < K(hi).
    double mid = 0.5 * (lo + hi);
    double kmid = K_of_a(in, mid);
    int it = 0;
    while (std::abs(kmid - rep.target) > tol) {
        if (kmid > rep.target) hi = mid;
        else lo = mid;
        const double next = 0.5 * (lo + hi);
        if (next == lo || next == hi) break;  // interval exhausted in floating point
        mid = next;
        kmid = K_of_a(in, mid);
        if (++it > 2000) break;
    }
    rep.a0 = mid;
    rep.iterations = it;
    rep.terms = K_terms(in, mid);
    rep.residual = kmid - rep.target;
    return rep;
}

enum class Verdict { admitted, not_admitted };

inline const char* to_string(Verdict v) { return v == Verdict::admitted ? "admitted" : "not_admitted"; }

struct AdmissibilityResult {
    Verdict verdict = Verdict::not_admitted;
    double a0 = 0.0;
    double cap = 0.0;
    double sharp_cap = 0.0;
};

/// admitted iff rho0_sup <= a0 (non-strict).
inline AdmissibilityResult admissibility_verdict(const ThresholdReport& rep, double rho0_sup) {
    if (!(rho0_sup >= 0.0)) throw std::invalid_argument("admissibility_verdict: rho0_sup must be >= 0");
    return {rho0_sup <= rep.a0 ? Verdict::admitted : Verdict::not_admitted, rep.a0, rep.cap, rep.sharp_cap};
}

inline AdmissibilityResult admissibility_verdict(const ThresholdInputs& in, double rho0_sup) {
    return admissibility_verdict(solve_a0(in), rho0_sup);
}

}  // namespace radswirl
