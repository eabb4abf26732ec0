#pragma once

#include <stdexcept>

#include "gcap/symplectic.hpp"

// Covariance-level action of the two single-mode Gaussian channels: the
// tau-beamsplitter (lossy) channel and the kappa-amplifier.

namespace gcap {

enum class ChannelKind { Beamsplitter, Amplifier };

/// A Gaussian channel mixing the input with the environment state
/// described by `noise`: tau-beamsplitter (0 <= tau <= 1) or
/// kappa-amplifier (kappa > 1).
struct ChannelSpec {
    ChannelKind kind = ChannelKind::Beamsplitter;
    double mixing = 1.0;  // tau or kappa
    NoiseSpec noise;

    static ChannelSpec beamsplitter(double tau, NoiseSpec noise = {}) {
        if (!(tau >= 0.0 && tau <= 1.0))
            throw DomainError("transmissivity tau must be in [0, 1]");
        return {ChannelKind::Beamsplitter, tau, noise};
    }

    static ChannelSpec amplifier(double kappa, NoiseSpec noise = {}) {
        if (!(kappa > 1.0))
            throw DomainError("amplifier gain kappa must be > 1");
        return {ChannelKind::Amplifier, kappa, noise};
    }

    double tau() const {
        if (kind != ChannelKind::Beamsplitter)
            throw std::logic_error("tau() on an amplifier channel");
        return mixing;
    }

    double kappa() const {
        if (kind != ChannelKind::Amplifier)
            throw std::logic_error("kappa() on a beamsplitter channel");
        return mixing;
    }
};

/// V_out = tau V_in + (1 - tau) V_noise. Convexity of the uncertainty cone
/// keeps the output a valid covariance matrix.
inline CovarianceMatrix beamsplitter_output_cov(const CovarianceMatrix& v_in,
                                                const CovarianceMatrix& v_noise,
                                                double tau) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw DomainError("transmissivity tau must be in [0, 1]");
    const double u = 1.0 - tau;
    return CovarianceMatrix::checked(tau * v_in.a() + u * v_noise.a(),
                                     tau * v_in.b() + u * v_noise.b(),
                                     tau * v_in.d() + u * v_noise.d());
}

/// V_out = kappa V_in + (kappa - 1) Z V_noise Z with Z = diag(1, -1).
///
/// The Stinespring realization is a two-mode squeezer, which phase-conjugates
/// the environment mode; Z flips the sign of the off-diagonal entry, so it
/// is invisible for thermal noise and matters only for squeezed noise. This
/// action reproduces the output photon number kappa N + (kappa - 1)(N_E + 1)
/// and reduces to the identity as kappa -> 1.
inline CovarianceMatrix amplifier_output_cov(const CovarianceMatrix& v_in,
                                             const CovarianceMatrix& v_noise,
                                             double kappa) {
    if (!(kappa > 1.0))
        throw DomainError("amplifier gain kappa must be > 1");
    const double u = kappa - 1.0;
    return CovarianceMatrix::checked(kappa * v_in.a() + u * v_noise.a(),
                                     kappa * v_in.b() - u * v_noise.b(),
                                     kappa * v_in.d() + u * v_noise.d());
}

/// Output covariance for an input with covariance v_in.
inline CovarianceMatrix output_cov(const ChannelSpec& spec,
                                   const CovarianceMatrix& v_in) {
    const CovarianceMatrix v_noise = general_noise_cov(spec.noise);
    return spec.kind == ChannelKind::Beamsplitter
               ? beamsplitter_output_cov(v_in, v_noise, spec.mixing)
               : amplifier_output_cov(v_in, v_noise, spec.mixing);
}

/// Output mean photon number for an input with mean photon number n_in:
/// tau n_in + (1 - tau) N_E for the beamsplitter,
/// kappa n_in + (kappa - 1)(N_E + 1) for the amplifier,
/// with N_E the physical mean photon number of the noise state.
inline double output_mean_photon(const ChannelSpec& spec, double n_in) {
    if (!(n_in >= 0.0) || !std::isfinite(n_in))
        throw DomainError("input mean photon number must be finite and >= 0");
    const double n_env = mean_photon_number(general_noise_cov(spec.noise));
    if (spec.kind == ChannelKind::Beamsplitter)
        return spec.mixing * n_in + (1.0 - spec.mixing) * n_env;
    return spec.mixing * n_in + (spec.mixing - 1.0) * (n_env + 1.0);
}

} // namespace gcap
