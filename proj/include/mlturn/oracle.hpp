// Independent frequency-domain oracle: per-mode transfer functions of the
// terminated lossless line evaluated on a discrete spectrum, inverse
// transformed, and superposed per mode. Shares no formula with the bounce
// model — input-admittance algebra here versus reflection series there.
#pragma once

#include <complex>

#include "mlturn/bounce.hpp"
#include "mlturn/excitation.hpp"
#include "mlturn/turn.hpp"

namespace mlturn {

/// Which node of the section the transfer function targets.
enum class NodeSide { Near, Far };

/// Sampling parameters of the oracle grid.
struct OracleConfig {
    Eigen::Index n_samples = 1 << 14; ///< power of two, >= 1024
    double dt = 0.0;                  ///< s; 0 requests the default, effective_rise/20
    double settle_margin = 3.0;       ///< window-length multiplier, >= 1

    /// Returns a copy with dt filled in from the excitation when unset.
    [[nodiscard]] OracleConfig resolved(const ExcitationSpec& ex) const;

    /// Throws std::invalid_argument unless n_samples is a power of two
    /// >= 1024, dt > 0 with dt <= effective_rise/10, and settle_margin >= 1.
    void validate(const ExcitationSpec& ex) const;
};

/// Transfer function from the source e.m.f. E to the node voltage of one
/// mode line (characteristic admittance y_mode, electrical angle
/// theta = 2*pi*f*tau_mode*length) driven through source admittance y0 and
/// terminated in `far`:
///   near:  H = Y0 / (Y0 + Y_in(f)),  Y_in the input admittance of the
///          terminated line (tangent formula, written pole-free)
///   far:   the same divided through to the far node; identically 0 for a
///          shorted termination.
/// Throws ResonancePole if the denominator underflows (cannot happen for a
/// passive termination with y0 > 0; kept as a guard).
[[nodiscard]] std::complex<double> mode_transfer(double y0, double y_mode, double tau_mode,
                                                 double length, const Termination& far,
                                                 NodeSide node, double frequency);

/// Oracle waveforms at nodes 1, 2 and 3, on the grid (t0 = 0, dt, n_samples).
struct OracleWaveforms {
    Waveform w1, w2, w3;
};

/// Samples the e.m.f., transforms to the frequency domain, applies
/// mode_transfer per mode (even: far open; odd: far shorted) and node,
/// inverse-transforms and combines the modes. The node-1 output has the
/// incident V_in subtracted so it is comparable with the analytic response
/// train. Throws WindowTooShort if n_samples*dt cannot hold settle_margin
/// times the last analytic delay plus the pulse duration, and
/// std::runtime_error if the inverse transforms are not real to within a
/// 1e-10 relative imaginary residue.
[[nodiscard]] OracleWaveforms turn_oracle(const TurnConfig& cfg, OracleConfig ocfg = {});

} // namespace mlturn
