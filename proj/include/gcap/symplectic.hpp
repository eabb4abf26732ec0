#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "gcap/entropy.hpp"
#include "gcap/errors.hpp"

// Exact 2x2 covariance-matrix algebra for zero-mean single-mode Gaussian
// states. Quadrature convention: the vacuum has covariance I, so a thermal
// state with mean photon number N has covariance (2N+1) I and the
// uncertainty relation reads det V >= 1.

namespace gcap {

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kHeisenbergTol = 1e-12;

/// Plain 2x2 real matrix, row-major.
struct Mat2 {
    double m00 = 0.0, m01 = 0.0, m10 = 0.0, m11 = 0.0;

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    /// Symplectic form Omega = [0 1; -1 0].
    static constexpr Mat2 omega() { return {0.0, 1.0, -1.0, 0.0}; }

    constexpr Mat2 transposed() const { return {m00, m10, m01, m11}; }
    constexpr double trace() const { return m00 + m11; }
    constexpr double det() const { return m00 * m11 - m01 * m10; }

    constexpr Mat2 operator*(const Mat2& o) const {
        return {m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
    }
    constexpr Mat2 operator+(const Mat2& o) const {
        return {m00 + o.m00, m01 + o.m01, m10 + o.m10, m11 + o.m11};
    }
    constexpr Mat2 operator-(const Mat2& o) const {
        return {m00 - o.m00, m01 - o.m01, m10 - o.m10, m11 - o.m11};
    }
    friend constexpr Mat2 operator*(double s, const Mat2& m) {
        return {s * m.m00, s * m.m01, s * m.m10, s * m.m11};
    }
};

/// Largest entry magnitude; the max-norm used by symplecticity checks.
inline double max_abs(const Mat2& m) {
    return std::max(std::max(std::fabs(m.m00), std::fabs(m.m01)),
                    std::max(std::fabs(m.m10), std::fabs(m.m11)));
}

/// M V M^T.
inline Mat2 sandwich(const Mat2& m, const Mat2& v) {
    return m * v * m.transposed();
}

namespace detail {
inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x))
        throw DomainError(std::string(name) + " must be finite");
}
} // namespace detail

/// Phase rotation O(theta) = [cos sin; -sin cos]. Orthogonal with det 1.
inline Mat2 rotation_matrix(double theta) {
    detail::require_finite(theta, "rotation angle");
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c, s, -s, c};
}

/// Single-mode squeezer T(r) = diag(e^-r, e^r). Symplectic with det 1.
inline Mat2 squeeze_matrix(double r) {
    detail::require_finite(r, "squeezing parameter");
    return {std::exp(-r), 0.0, 0.0, std::exp(r)};
}

/// Euler angles (theta, r, phi) of a single-mode symplectic matrix
/// O(theta) T(r) O(phi). Every single-mode symplectic decomposes this way.
struct EulerDecomposition {
    double theta = 0.0;
    double r = 0.0;
    double phi = 0.0;
};

/// The product O(theta) T(r) O(phi); preserves Omega and has det 1.
inline Mat2 compose_euler(const EulerDecomposition& dec) {
    return rotation_matrix(dec.theta) * squeeze_matrix(dec.r) *
           rotation_matrix(dec.phi);
}

/// Covariance matrix [a b; b d] of a zero-mean single-mode Gaussian state.
///
/// Instances exist only if symmetric, positive definite and det >= 1
/// (within 1e-12). A determinant within 1e-12 of 1 on either side is
/// clamped to exactly 1: such a matrix is indistinguishable from a pure
/// state at entry-rounding level, and the clamp keeps nu >= 1 and
/// entropy(pure) == 0 exact.
class CovarianceMatrix {
public:
    /// Validating construction from the symmetric entries [a b; b d].
    static CovarianceMatrix checked(double a, double b, double d) {
        if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d))
            throw CovMatrixError(CovMatrixError::Kind::NotPositiveDefinite,
                                 "covariance matrix entries must be finite");
        // a d - b^2 with an fma-corrected product, so the determinant of the
        // stored entries is accurate even when the products nearly cancel.
        const double w = b * b;
        const double err = std::fma(b, b, -w);  // b^2 == w + err exactly
        double det = std::fma(a, d, -w) - err;
        if (!(a > 0.0) || !(det > 0.0))
            throw CovMatrixError(CovMatrixError::Kind::NotPositiveDefinite,
                                 "covariance matrix must be positive definite");
        if (det < 1.0 - kHeisenbergTol)
            throw CovMatrixError(
                CovMatrixError::Kind::SubHeisenberg,
                "covariance matrix violates det V >= 1 (det = " +
                    std::to_string(det) + ")");
        if (std::fabs(det - 1.0) <= kHeisenbergTol)
            det = 1.0;
        return CovarianceMatrix(a, b, d, det);
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return b_; }  // symmetric by construction
    double d() const { return d_; }

    double det() const { return det_; }
    double trace() const { return a_ + d_; }
    Mat2 mat() const { return {a_, b_, b_, d_}; }

private:
    CovarianceMatrix(double a, double b, double d, double det)
        : a_(a), b_(b), d_(d), det_(det) {}

    double a_, b_, d_;
    double det_;
};

/// Accepts a raw 2x2 matrix as a covariance matrix, symmetrizing entries
/// that agree within 1e-12. Rejections carry a distinct CovMatrixError kind
/// per failed invariant.
inline CovarianceMatrix validate_cov(const Mat2& raw) {
    if (!(std::fabs(raw.m01 - raw.m10) <= kSymmetryTol))
        throw CovMatrixError(CovMatrixError::Kind::Asymmetric,
                             "covariance matrix must be symmetric");
    return CovarianceMatrix::checked(raw.m00, 0.5 * (raw.m01 + raw.m10),
                                     raw.m11);
}

/// V_th = (2 n_mean + 1) I.
inline CovarianceMatrix thermal_cov(double n_mean) {
    if (!(n_mean >= 0.0) || !std::isfinite(n_mean))
        throw DomainError("thermal mean photon number must be finite and >= 0");
    const double w = 2.0 * n_mean + 1.0;
    return CovarianceMatrix::checked(w, 0.0, w);
}

/// Environmental Gaussian noise: a thermal state with n_th mean photons,
/// squeezed by r and phase-rotated by theta.
///
/// The physical mean photon number N_E of the resulting state obeys
/// 2 N_E + 1 = (2 n_th + 1) cosh 2r, so N_E >= n_th with equality iff
/// r = 0, while det V_G = (2 n_th + 1)^2 for every (r, theta). The two
/// numbers are deliberately kept apart: n_th parametrizes the determinant,
/// mean_photons() is the energy.
struct NoiseSpec {
    double n_th = 0.0;
    double r = 0.0;
    double theta = 0.0;

    NoiseSpec() = default;

    NoiseSpec(double n_th_, double r_, double theta_)
        : n_th(n_th_), r(r_), theta(theta_) {
        if (!(n_th >= 0.0) || !std::isfinite(n_th))
            throw DomainError(
                "noise thermal photon number must be finite and >= 0");
        detail::require_finite(r, "noise squeezing parameter");
        detail::require_finite(theta, "noise rotation angle");
    }

    /// Back-solves n_th from the physical mean photon number n_e. Throws if
    /// n_e is below the squeezed-vacuum floor (cosh 2r - 1)/2.
    static NoiseSpec from_mean_photons(double n_e, double r, double theta) {
        if (!(n_e >= 0.0) || !std::isfinite(n_e))
            throw DomainError(
                "noise mean photon number must be finite and >= 0");
        detail::require_finite(r, "noise squeezing parameter");
        const double n_th = ((2.0 * n_e + 1.0) / std::cosh(2.0 * r) - 1.0) / 2.0;
        if (n_th < -kHeisenbergTol)
            throw DomainError(
                "mean photon number " + std::to_string(n_e) +
                " is infeasible at squeezing r = " + std::to_string(r) +
                "; minimum is (cosh 2r - 1)/2 = " +
                std::to_string((std::cosh(2.0 * r) - 1.0) / 2.0));
        return NoiseSpec(n_th < 0.0 ? 0.0 : n_th, r, theta);
    }

    /// Physical mean photon number N_E = ((2 n_th + 1) cosh 2r - 1)/2.
    double mean_photons() const {
        return ((2.0 * n_th + 1.0) * std::cosh(2.0 * r) - 1.0) / 2.0;
    }
};

/// V_G = (2 n_th + 1) O(theta) T(2r) O(theta)^T, written out in closed form
/// so the result is symmetric by construction. The squeeze argument is 2r:
/// the phi rotation of the Euler decomposition cancels against the isotropic
/// thermal covariance and the r of the sandwiched squeezer doubles.
inline CovarianceMatrix general_noise_cov(const NoiseSpec& spec) {
    const double w = 2.0 * spec.n_th + 1.0;
    const double c = std::cos(spec.theta);
    const double s = std::sin(spec.theta);
    const double em = std::exp(-2.0 * spec.r);
    const double ep = std::exp(2.0 * spec.r);
    const double a = w * (c * c * em + s * s * ep);
    const double b = w * (c * s * (ep - em));
    const double d = w * (s * s * em + c * c * ep);
    return CovarianceMatrix::checked(a, b, d);
}

/// Single-mode symplectic eigenvalue nu = sqrt(det V) >= 1; nu = 1 iff pure.
inline double symplectic_eigenvalue(const CovarianceMatrix& v) {
    return std::sqrt(v.det());
}

/// Mean photon number (Tr V / 2 - 1)/2. Non-negative for every valid V
/// since Tr V / 2 >= sqrt(det V) >= 1.
inline double mean_photon_number(const CovarianceMatrix& v) {
    return (0.5 * v.trace() - 1.0) / 2.0;
}

/// Von Neumann entropy S(V) = g((nu - 1)/2) in nats; 0 iff the state is pure.
inline double gaussian_entropy(const CovarianceMatrix& v) {
    return g((symplectic_eigenvalue(v) - 1.0) / 2.0);
}

} // namespace gcap
