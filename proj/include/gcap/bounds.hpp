#pragma once

#include <cmath>
#include <optional>

#include "gcap/channels.hpp"
#include "gcap/entropy.hpp"
#include "gcap/symplectic.hpp"

// Closed-form capacity quantities for single-mode Gaussian-noise channels,
// all in nats. Lower bound: Holevo capacity under coherent-state encoding.
// Upper bounds: the thermal-noise (Smith-Konig) bound, its general-noise
// generalization, the log-sum tightening, and the amplifier bound.

namespace gcap {

namespace detail {
inline void require_tau(double tau) {
    if (!(tau >= 0.0 && tau <= 1.0))
        throw DomainError("transmissivity tau must be in [0, 1]");
}
inline void require_photons(double n, const char* name) {
    if (!(n >= 0.0) || !std::isfinite(n))
        throw DomainError(std::string(name) + " must be finite and >= 0");
}
} // namespace detail

/// Capacity of the noiseless channel: g(n_in).
inline double noiseless_capacity(double n_in) {
    detail::require_photons(n_in, "input mean photon number");
    return g(n_in);
}

/// Capacity of the pure-loss channel: g(tau n_in).
inline double pure_loss_capacity(double tau, double n_in) {
    detail::require_tau(tau);
    detail::require_photons(n_in, "input mean photon number");
    return g(tau * n_in);
}

/// Holevo capacity of the thermal-noise channel under coherent-state
/// encoding: g(tau N + (1-tau) N_E) - g((1-tau) N_E).
inline double holevo_thermal(double tau, double n_in, double n_env) {
    detail::require_tau(tau);
    detail::require_photons(n_in, "input mean photon number");
    detail::require_photons(n_env, "environment mean photon number");
    return g(tau * n_in + (1.0 - tau) * n_env) - g((1.0 - tau) * n_env);
}

/// Minimum output entropy of the thermal-noise channel: g((1-tau) N_E).
inline double min_output_entropy_thermal(double tau, double n_env) {
    detail::require_tau(tau);
    detail::require_photons(n_env, "environment mean photon number");
    return g((1.0 - tau) * n_env);
}

/// Thermal-noise upper bound: g(tau N + (1-tau) N_E) - (1-tau) g(N_E).
inline double sk_upper(double tau, double n_in, double n_env) {
    detail::require_tau(tau);
    detail::require_photons(n_in, "input mean photon number");
    detail::require_photons(n_env, "environment mean photon number");
    return g(tau * n_in + (1.0 - tau) * n_env) - (1.0 - tau) * g(n_env);
}

/// General-noise upper bound:
///
///   g(tau N + (1-tau) N_E) - (1-tau) g((sqrt(det V_G) - 1)/2).
///
/// N_E is the physical mean photon number of the noise state (it grows with
/// cosh 2r), while the subtracted term's argument equals n_th for every
/// (r, theta) by determinant invariance; with r = 0 the two coincide and the
/// bound reduces to sk_upper. Endpoint values at tau = 0, 1 are continuous
/// extensions of the formula.
inline double general_upper(double tau, double n_in, const NoiseSpec& noise) {
    detail::require_tau(tau);
    detail::require_photons(n_in, "input mean photon number");
    const CovarianceMatrix vg = general_noise_cov(noise);
    const double n_env = mean_photon_number(vg);
    const double n_det = (symplectic_eigenvalue(vg) - 1.0) / 2.0;
    return g(tau * n_in + (1.0 - tau) * n_env) - (1.0 - tau) * g(n_det);
}

/// Amplifier upper bound:
///
///   g(kappa N + (kappa-1)(N_E+1))
///       - (kappa-1)/(2 kappa - 1) g((sqrt(det V_G) - 1)/2).
inline double amplifier_general_upper(double kappa, double n_in,
                                      const NoiseSpec& noise) {
    if (!(kappa > 1.0))
        throw DomainError("amplifier gain kappa must be > 1");
    detail::require_photons(n_in, "input mean photon number");
    const CovarianceMatrix vg = general_noise_cov(noise);
    const double n_env = mean_photon_number(vg);
    const double n_det = (symplectic_eigenvalue(vg) - 1.0) / 2.0;
    return g(kappa * n_in + (kappa - 1.0) * (n_env + 1.0)) -
           (kappa - 1.0) / (2.0 * kappa - 1.0) * g(n_det);
}

/// Log-sum upper bound:
///
///   g(tau N + (1-tau) N_E) - log(tau + (1-tau) e^S),  S = g((sqrt(det V_G)-1)/2).
///
/// Tighter than general_upper for the same inputs (convexity of exp). The
/// mixture log is evaluated as S + log((1-tau) + tau e^-S) to stay finite
/// for large S.
inline double log_sum_upper(double tau, double n_in, const NoiseSpec& noise) {
    detail::require_tau(tau);
    detail::require_photons(n_in, "input mean photon number");
    const CovarianceMatrix vg = general_noise_cov(noise);
    const double n_env = mean_photon_number(vg);
    const double s_noise = g((symplectic_eigenvalue(vg) - 1.0) / 2.0);
    const double mix_log =
        s_noise + std::log((1.0 - tau) + tau * std::exp(-s_noise));
    return g(tau * n_in + (1.0 - tau) * n_env) - mix_log;
}

/// Every capacity quantity for one (channel, input photon number)
/// configuration. Fields that do not apply to the channel kind are left
/// empty rather than zeroed, so downstream plots never draw a meaningless
/// zero line. min_output_entropy is populated only for thermal noise
/// (r == 0), where its closed form is proven.
struct BoundSet {
    ChannelSpec channel;
    double n_in = 0.0;

    std::optional<double> holevo;
    std::optional<double> max_output_entropy_term;
    std::optional<double> min_output_entropy;
    std::optional<double> sk_upper;
    std::optional<double> general_upper;
    std::optional<double> log_sum_upper;
    std::optional<double> amplifier_general_upper;
    std::optional<double> noiseless;
    std::optional<double> pure_loss;
};

/// Evaluates every bound applicable to the channel kind.
inline BoundSet evaluate_bound_set(const ChannelSpec& spec, double n_in) {
    detail::require_photons(n_in, "input mean photon number");
    BoundSet out;
    out.channel = spec;
    out.n_in = n_in;
    out.noiseless = noiseless_capacity(n_in);
    out.max_output_entropy_term = g(output_mean_photon(spec, n_in));

    if (spec.kind == ChannelKind::Beamsplitter) {
        const double tau = spec.tau();
        const double n_env = mean_photon_number(general_noise_cov(spec.noise));
        out.holevo = holevo_thermal(tau, n_in, n_env);
        out.sk_upper = sk_upper(tau, n_in, n_env);
        out.general_upper = general_upper(tau, n_in, spec.noise);
        out.log_sum_upper = log_sum_upper(tau, n_in, spec.noise);
        out.pure_loss = pure_loss_capacity(tau, n_in);
        if (spec.noise.r == 0.0)
            out.min_output_entropy = min_output_entropy_thermal(tau, n_env);
    } else {
        out.amplifier_general_upper =
            amplifier_general_upper(spec.kappa(), n_in, spec.noise);
    }
    return out;
}

} // namespace gcap
