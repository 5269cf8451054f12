/// @file jet.hpp
/// @brief Second-order forward-mode Taylor jets in one variable.
///
/// A Jet carries (f, f', f'') at a point. Manufactured fields are written
/// once as functions of Jet and differentiated by evaluation.
#pragma once

#include <cmath>

namespace radswirl {

struct Jet {
    double v = 0.0;
    double d = 0.0;
    double dd = 0.0;

    constexpr Jet() = default;
    constexpr Jet(double value) : v(value) {}  // NOLINT: implicit constants are intended
    constexpr Jet(double value, double first, double second) : v(value), d(first), dd(second) {}

    static constexpr Jet variable(double x) { return Jet(x, 1.0, 0.0); }
};

namespace detail {
/// Chain rule for g(f) given g(f), g'(f), g''(f).
constexpr Jet compose(const Jet& f, double g0, double g1, double g2) {
    return Jet(g0, g1 * f.d, g2 * f.d * f.d + g1 * f.dd);
}
}  // namespace detail

constexpr Jet operator+(const Jet& a, const Jet& b) { return Jet(a.v + b.v, a.d + b.d, a.dd + b.dd); }
constexpr Jet operator-(const Jet& a, const Jet& b) { return Jet(a.v - b.v, a.d - b.d, a.dd - b.dd); }
constexpr Jet operator-(const Jet& a) { return Jet(-a.v, -a.d, -a.dd); }
constexpr Jet operator*(const Jet& a, const Jet& b) {
    return Jet(a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd);
}
constexpr Jet operator/(const Jet& a, const Jet& b) {
    const double q = a.v / b.v;
    const double q1 = (a.d - q * b.d) / b.v;
    const double q2 = (a.dd - 2.0 * q1 * b.d - q * b.dd) / b.v;
    return Jet(q, q1, q2);
}
constexpr Jet operator+(const Jet& a, double b) { return Jet(a.v + b, a.d, a.dd); }
constexpr Jet operator+(double a, const Jet& b) { return b + a; }
constexpr Jet operator-(const Jet& a, double b) { return Jet(a.v - b, a.d, a.dd); }
constexpr Jet operator-(double a, const Jet& b) { return Jet(a - b.v, -b.d, -b.dd); }
constexpr Jet operator*(const Jet& a, double b) { return Jet(a.v * b, a.d * b, a.dd * b); }
constexpr Jet operator*(double a, const Jet& b) { return b * a; }
constexpr Jet operator/(const Jet& a, double b) { return Jet(a.v / b, a.d / b, a.dd / b); }
constexpr Jet operator/(double a, const Jet& b) { return Jet(a) / b; }

inline Jet sin(const Jet& f) { return detail::compose(f, std::sin(f.v), std::cos(f.v), -std::sin(f.v)); }
inline Jet cos(const Jet& f) { return detail::compose(f, std::cos(f.v), -std::sin(f.v), -std::cos(f.v)); }
inline Jet exp(const Jet& f) {
    const double e = std::exp(f.v);
    return detail::compose(f, e, e, e);
}
inline Jet log(const Jet& f) { return detail::compose(f, std::log(f.v), 1.0 / f.v, -1.0 / (f.v * f.v)); }
inline Jet pow(const Jet& f, double a) {
    return detail::compose(f, std::pow(f.v, a), a * std::pow(f.v, a - 1.0), a * (a - 1.0) * std::pow(f.v, a - 2.0));
}
inline Jet sqrt(const Jet& f) { return pow(f, 0.5); }

}  // namespace radswirl
