#pragma once

#include <cmath>

#include "gcap/errors.hpp"

namespace gcap {

/// Von Neumann entropy (nats) of a thermal state with mean photon number x:
///
///   g(x) = (1+x) log(1+x) - x log x,   g(0) = 0.
///
/// Strictly increasing and concave on [0, inf). Evaluated as
/// x log(1 + 1/x) + log(1 + x), which is algebraically identical but does
/// not cancel catastrophically for small x.
inline double g(double x) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw DomainError("g: mean photon number must be finite and >= 0");
    // 1/x overflows below ~1e-308; g(x) < 1e-297 there, which is zero for
    // every consumer of this function.
    if (x < 1e-300)
        return 0.0;
    return x * std::log1p(1.0 / x) + std::log1p(x);
}

} // namespace gcap
