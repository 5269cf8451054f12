/// @file tridiagonal.hpp
/// @brief Thomas algorithm for the implicit radial viscous operators.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace radswirl {

class LinearSolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    explicit Tridiagonal(std::size_t n = 0) : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0) {}
    std::size_t size() const { return diag.size(); }

    std::vector<double> apply(const std::vector<double>& x) const {
        const std::size_t n = size();
        std::vector<double> y(n);
        for (std::size_t i = 0; i < n; ++i) {
            double v = diag[i] * x[i];
            if (i > 0) v += lower[i] * x[i - 1];
            if (i + 1 < n) v += upper[i] * x[i + 1];
            y[i] = v;
        }
        return y;
    }

    /// Weak row diagonal dominance, strict in at least one row.
    bool diagonally_dominant() const {
        const std::size_t n = size();
        bool strict = false;
        for (std::size_t i = 0; i < n; ++i) {
            const double off = (i > 0 ? std::abs(lower[i]) : 0.0) + (i + 1 < n ? std::abs(upper[i]) : 0.0);
            const double d = std::abs(diag[i]);
            if (d < off * (1.0 - 1e-12)) return false;
            if (d > off) strict = true;
        }
        return strict;
    }
};

/// Solves m x = rhs without pivoting. Throws LinearSolveError on a zero or
/// non-finite pivot.
inline std::vector<double> solve(const Tridiagonal& m, std::vector<double> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n) throw std::invalid_argument("tridiagonal solve: size mismatch");
    if (n == 0) return rhs;
    std::vector<double> c(n);
    double pivot = m.diag[0];
    for (std::size_t i = 0;; ++i) {
        if (!std::isfinite(pivot) || pivot == 0.0)
            throw LinearSolveError("tridiagonal solve: singular pivot in row " + std::to_string(i));
        const double inv = 1.0 / pivot;
        c[i] = (i + 1 < n) ? m.upper[i] * inv : 0.0;
        rhs[i] *= inv;
        if (i + 1 == n) break;
        pivot = m.diag[i + 1] - m.lower[i + 1] * c[i];
        rhs[i + 1] -= m.lower[i + 1] * rhs[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(rhs[i])) throw LinearSolveError("tridiagonal solve: non-finite solution");
    return rhs;
}

}  // namespace radswirl
