// Shared helpers for the unit tests.
#pragma once

#include <cmath>
#include <functional>

#include "radswirl/grid.hpp"

namespace radswirl::testing {

inline Field sample(const RadialGrid& g, const std::function<double(double)>& f) {
    Field out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) out[i] = f(g.r(i));
    return out;
}

inline double log2_ratio(double coarse, double fine) { return std::log2(coarse / fine); }

}  // namespace radswirl::testing
