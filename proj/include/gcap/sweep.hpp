#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gcap/bounds.hpp"
#include "gcap/csv.hpp"

// Curve sweeps over one parameter of a (channel, input) configuration,
// emitting one BoundSet per grid point and a deterministic CSV:
//
//   # units=nats|bits
//   swept_var,holevo,sk_upper,general_upper,log_sum_upper[,amplifier_general_upper]
//
// The amplifier column appears only for amplifier channels, whose rows
// leave the beamsplitter-only columns empty.

namespace gcap {

enum class SweepVariable { InputPhotons, Tau, Kappa, SqueezingR, EnvPhotons };

enum class Units { Nats, Bits };

inline std::string_view sweep_variable_name(SweepVariable v) {
    switch (v) {
    case SweepVariable::InputPhotons: return "input_photons";
    case SweepVariable::Tau: return "tau";
    case SweepVariable::Kappa: return "kappa";
    case SweepVariable::SqueezingR: return "squeezing_r";
    case SweepVariable::EnvPhotons: return "env_photons";
    }
    return "?";
}

inline std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
    if (name == "input_photons") return SweepVariable::InputPhotons;
    if (name == "tau") return SweepVariable::Tau;
    if (name == "kappa") return SweepVariable::Kappa;
    if (name == "squeezing_r") return SweepVariable::SqueezingR;
    if (name == "env_photons") return SweepVariable::EnvPhotons;
    return std::nullopt;
}

/// One sweep: `variable` runs over `steps` equally spaced values in
/// [start, stop]; every other parameter is pinned by `base` and `n_in`.
/// env_photons sweeps the noise thermal photon number n_th (equal to the
/// physical N_E when r = 0).
struct SweepRequest {
    SweepVariable variable = SweepVariable::InputPhotons;
    double start = 0.0;
    double stop = 1.0;
    int steps = 2;
    ChannelSpec base;
    double n_in = 0.0;
    Units units = Units::Nats;
};

namespace detail {

inline ChannelSpec with_noise(const ChannelSpec& base, const NoiseSpec& noise) {
    return base.kind == ChannelKind::Beamsplitter
               ? ChannelSpec::beamsplitter(base.mixing, noise)
               : ChannelSpec::amplifier(base.mixing, noise);
}

/// Applies one swept value, revalidating the touched parameter so that a
/// domain violation names the offending value.
inline BoundSet evaluate_sweep_point(const SweepRequest& req, double value) {
    try {
        switch (req.variable) {
        case SweepVariable::InputPhotons:
            return evaluate_bound_set(req.base, value);
        case SweepVariable::Tau:
            return evaluate_bound_set(
                ChannelSpec::beamsplitter(value, req.base.noise), req.n_in);
        case SweepVariable::Kappa:
            return evaluate_bound_set(
                ChannelSpec::amplifier(value, req.base.noise), req.n_in);
        case SweepVariable::SqueezingR:
            return evaluate_bound_set(
                with_noise(req.base, NoiseSpec(req.base.noise.n_th, value,
                                               req.base.noise.theta)),
                req.n_in);
        case SweepVariable::EnvPhotons:
            return evaluate_bound_set(
                with_noise(req.base, NoiseSpec(value, req.base.noise.r,
                                               req.base.noise.theta)),
                req.n_in);
        }
    } catch (const std::invalid_argument& e) {
        throw DomainError("sweep aborted at " +
                          std::string(sweep_variable_name(req.variable)) +
                          " = " + format_double(value) + ": " + e.what());
    }
    throw DomainError("unknown sweep variable");
}

} // namespace detail

inline void validate_sweep(const SweepRequest& req) {
    if (req.steps < 2)
        throw DomainError("sweep needs steps >= 2");
    if (!(req.start < req.stop))
        throw DomainError("sweep needs start < stop");
    const bool amp = req.base.kind == ChannelKind::Amplifier;
    switch (req.variable) {
    case SweepVariable::Tau:
        if (amp)
            throw DomainError("tau sweep requires a beamsplitter channel");
        if (!(req.start >= 0.0 && req.stop <= 1.0))
            throw DomainError("tau sweep range must lie within [0, 1]");
        break;
    case SweepVariable::Kappa:
        if (!amp)
            throw DomainError("kappa sweep requires an amplifier channel");
        if (!(req.start > 1.0))
            throw DomainError("kappa sweep range must lie within (1, inf)");
        break;
    case SweepVariable::InputPhotons:
    case SweepVariable::EnvPhotons:
        if (!(req.start >= 0.0))
            throw DomainError("photon-number sweep range must be >= 0");
        break;
    case SweepVariable::SqueezingR:
        if (!std::isfinite(req.start) || !std::isfinite(req.stop))
            throw DomainError("squeezing sweep range must be finite");
        break;
    }
    if (!(req.n_in >= 0.0))
        throw DomainError("input mean photon number must be >= 0");
}

struct SweepRow {
    double swept = 0.0;
    BoundSet bounds;
};

/// Runs the sweep in grid order. The first and last points hit start and
/// stop exactly.
inline std::vector<SweepRow> run_sweep(const SweepRequest& req) {
    validate_sweep(req);
    const double step = (req.stop - req.start) / (req.steps - 1);
    std::vector<SweepRow> rows;
    rows.reserve(static_cast<std::size_t>(req.steps));
    for (int i = 0; i < req.steps; ++i) {
        const double value =
            i == req.steps - 1 ? req.stop : req.start + i * step;
        rows.push_back({value, detail::evaluate_sweep_point(req, value)});
    }
    return rows;
}

inline void write_sweep_csv(std::ostream& os, const SweepRequest& req,
                            const std::vector<SweepRow>& rows) {
    const bool amp = req.base.kind == ChannelKind::Amplifier ||
                     req.variable == SweepVariable::Kappa;
    const double scale =
        req.units == Units::Bits ? 1.0 / std::numbers::ln2 : 1.0;
    os << "# units=" << (req.units == Units::Bits ? "bits" : "nats") << '\n';
    os << "swept_var,holevo,sk_upper,general_upper,log_sum_upper";
    if (amp)
        os << ",amplifier_general_upper";
    os << '\n';
    auto cell = [&](const std::optional<double>& v) {
        return v ? format_double(*v * scale) : std::string();
    };
    for (const SweepRow& row : rows) {
        os << format_double(row.swept) << ',' << cell(row.bounds.holevo) << ','
           << cell(row.bounds.sk_upper) << ',' << cell(row.bounds.general_upper)
           << ',' << cell(row.bounds.log_sum_upper);
        if (amp)
            os << ',' << cell(row.bounds.amplifier_general_upper);
        os << '\n';
    }
}

} // namespace gcap
