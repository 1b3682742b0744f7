// Closed-form pulse amplitudes at the turn output and the matching /
// equalization design condition, including the cubic in the coupling
// coefficient.
#pragma once

#include <array>

#include "mlturn/modal.hpp"

namespace mlturn {

/// Normalized (to the V_in peak) amplitudes of the three decomposed pulses
/// at the turn output: crosstalk, odd-mode, even-mode.
struct PulseAmplitudes {
    double v_c = 0.0;
    double v_o = 0.0;
    double v_e = 0.0;
};

/// Everything the equalize command reports.
struct EqualizationReport {
    double k = 0.0;          ///< coupling coefficient of the cross-section
    double y0_matched = 0.0; ///< sqrt(y_even*y_odd), S
    double y0_used = 0.0;    ///< admittance the amplitudes were evaluated at, S
    PulseAmplitudes amplitudes;
    double eq9_residual = 0.0; ///< residual of the compact identity, see below
    bool eq9_applicable = false; ///< false for an uncoupled cross-section
    bool separation_ok = false;  ///< three pulses distinct at this length/duration
};

/// Closed forms:
///   v_c = Y0(Yo - Ye) / ((Yo + Y0)(Ye + Y0))
///   v_o = 2 Y0 Yo / (Yo + Y0)^2
///   v_e = 2 Y0 Ye / (Ye + Y0)^2
/// Each equals the corresponding leading gain of the turn-output (v2) train.
[[nodiscard]] PulseAmplitudes pulse_amplitudes(const ModalParameters& modal, double y0);

/// The matching condition Y0 = sqrt(Ye*Yo), which makes v_o = v_e.
[[nodiscard]] double matched_admittance(const ModalParameters& modal);

/// Roots of k^3 - k^2 - 3k - 1 = 0 in closed form, ascending:
/// {-1, 1-sqrt(2), 1+sqrt(2)}. Each is polished by one Newton step; the
/// residual |p(root)| is below 1e-12 for all three.
[[nodiscard]] std::array<double, 3> equalization_cubic_roots();

/// The unique physical (k > 1) root, 1 + sqrt(2).
[[nodiscard]] double physical_coupling_root();

/// Common normalized amplitude (k - 1)/(k + 1) of all three pulses when the
/// cross-section satisfies the cubic and Y0 is matched. Requires k > 0.
[[nodiscard]] double normalized_equal_amplitude(double k);

/// Residual of the compact matched-admittance equalization identity
///   (Yo - 3 Ye)/Y0 - Ye/Yo = 1,
/// reported as lhs - 1. At Y0 = sqrt(Ye*Yo) this equals
/// (k^3 - k^2 - 3k - 1)/k^2, so it vanishes exactly at k = 1 + sqrt(2).
/// (The identity is often quoted with a '+' before Ye/Yo, which is
/// inconsistent with the cubic it is derived from; the form above is the one
/// that follows from v_c = v_o.)
[[nodiscard]] double equalization_residual(const ModalParameters& modal, double y0);

/// The equalization identity concerns a coupled pair; it degenerates for an
/// uncoupled cross-section (k = 1, no crosstalk pulse).
[[nodiscard]] bool equalization_applicable(const ModalParameters& modal);

/// True iff the three output pulses are time-separated at this length:
/// min(2*l*tau_min, 2*l*|tau_even - tau_odd|) > pulse_duration.
/// Returns false when tau_even = tau_odd (the pulses merge).
[[nodiscard]] bool check_separation(const ModalParameters& modal, double length,
                                    double pulse_duration);

/// A cross-section designed on the exact root k* = 1 + sqrt(2).
struct EqualizedDesign {
    double z_even = 0.0; ///< ohm, as given
    double z_odd = 0.0;  ///< ohm, z_even / k*^2
    double y0 = 0.0;     ///< S, matched admittance of the designed pair
    double predicted_amplitude = 0.0; ///< 1/(1 + sqrt(2))
};

/// Completes a cross-section from its even-mode impedance so that all three
/// output pulses have equal amplitude. Requires z_even > 0.
[[nodiscard]] EqualizedDesign design_equalized(double z_even_ohm);

/// Assembles the full report. Amplitudes and the identity residual are
/// evaluated at y0_used; y0_matched is always reported alongside.
[[nodiscard]] EqualizationReport make_equalization_report(const ModalParameters& modal,
                                                          double y0_used, double length,
                                                          double pulse_duration);

} // namespace mlturn
