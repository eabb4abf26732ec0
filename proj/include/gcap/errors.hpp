#pragma once

#include <stdexcept>
#include <string>

namespace gcap {

/// A parameter outside its documented domain (negative photon number,
/// transmissivity outside [0,1], non-finite angle, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A raw 2x2 matrix rejected as a covariance matrix. `kind` identifies
/// which invariant failed.
struct CovMatrixError : std::invalid_argument {
    enum class Kind {
        Asymmetric,
        NotPositiveDefinite,
        SubHeisenberg,  // det V < 1 beyond tolerance
    };

    Kind kind;

    CovMatrixError(Kind k, const std::string& what)
        : std::invalid_argument(what), kind(k) {}
};

} // namespace gcap
