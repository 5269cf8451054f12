/// @file grid.hpp
/// @brief Cell-centered radial mesh on the disk B_R with area quadrature.
///
/// Cells are uniform in r; cell i spans [i h, (i+1) h] and carries the
/// quadrature weight 2 pi r_i h. No node sits on r = 0, so every pointwise
/// quantity is evaluated away from the coordinate singularity.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace radswirl {

using Field = std::vector<double>;

/// Sentinel exponent for the sup-norm in lp_norm().
inline constexpr double kSupNorm = std::numeric_limits<double>::infinity();

/// Physical constants. The pressure and bulk-viscosity prefactors are fixed
/// to one: P = rho^gamma, lambda = rho^beta.
struct FluidParams {
    double mu = 1.0;
    double beta = 1.0;
    double gamma = 2.0;
    double R = 1.0;

    void validate() const {
        if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
        if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
        if (!(gamma > 1.0)) throw std::invalid_argument("gamma must be > 1");
        if (!(R > 0.0)) throw std::invalid_argument("R must be > 0");
    }
};

class RadialGrid {
public:
    RadialGrid(std::size_t n, double radius) : n_(n), radius_(radius) {
        if (n < 4) throw std::invalid_argument("RadialGrid: need N >= 4 cells, got " + std::to_string(n));
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw std::invalid_argument("RadialGrid: radius must be positive and finite");
        h_ = radius / static_cast<double>(n);
        centers_.resize(n);
        faces_.resize(n + 1);
        weights_.resize(n);
        for (std::size_t f = 0; f <= n; ++f) faces_[f] = static_cast<double>(f) * h_;
        faces_[n] = radius;
        for (std::size_t i = 0; i < n; ++i) {
            centers_[i] = (static_cast<double>(i) + 0.5) * h_;
            weights_[i] = 2.0 * std::numbers::pi * centers_[i] * h_;
        }
    }

    std::size_t size() const { return n_; }
    double radius() const { return radius_; }
    double h() const { return h_; }
    double area() const { return std::numbers::pi * radius_ * radius_; }

    std::span<const double> centers() const { return centers_; }
    std::span<const double> faces() const { return faces_; }
    std::span<const double> weights() const { return weights_; }

    double r(std::size_t i) const { return centers_[i]; }
    double face(std::size_t f) const { return faces_[f]; }
    double weight(std::size_t i) const { return weights_[i]; }

private:
    std::size_t n_;
    double radius_;
    double h_ = 0.0;
    Field centers_;
    Field faces_;
    Field weights_;
};

inline RadialGrid build_grid(std::size_t n, double radius) { return RadialGrid(n, radius); }

namespace detail {
inline void check_size(const RadialGrid& grid, std::span<const double> f, const char* what) {
    if (f.size() != grid.size())
        throw std::invalid_argument(std::string(what) + ": field has " + std::to_string(f.size()) +
                                    " entries, grid has " + std::to_string(grid.size()));
}
}  // namespace detail

/// Midpoint quadrature of f over the disk. Exact for f affine in r^2.
inline double integrate_disk(const RadialGrid& grid, std::span<const double> f) {
    detail::check_size(grid, f, "integrate_disk");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * grid.weight(i);
    return sum;
}

inline double mean_disk(const RadialGrid& grid, std::span<const double> f) {
    return integrate_disk(grid, f) / grid.area();
}

/// L^p(B_R) norm; p == kSupNorm gives the max over cell centers.
inline double lp_norm(const RadialGrid& grid, std::span<const double> f, double p) {
    detail::check_size(grid, f, "lp_norm");
    if (std::isnan(p) || p < 1.0) throw std::invalid_argument("lp_norm: exponent must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f) m = std::max(m, std::abs(v));
        return m;
    }
    double sum = 0.0;
    if (p == 2.0) {
        for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * f[i] * grid.weight(i);
        return std::sqrt(sum);
    }
    for (std::size_t i = 0; i < f.size(); ++i) sum += std::pow(std::abs(f[i]), p) * grid.weight(i);
    return std::pow(sum, 1.0 / p);
}

/// Midpoint rule for the one-dimensional moment int_0^R f(r) r^k dr.
inline double radial_moment(const RadialGrid& grid, std::span<const double> f, int k) {
    detail::check_size(grid, f, "radial_moment");
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::pow(grid.r(i), k);
    return sum * grid.h();
}

}  // namespace radswirl
