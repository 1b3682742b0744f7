// Single-line multiple-reflection (bounce) model: response components and
// the summed near/far responses of one terminated line section.
#pragma once

#include "mlturn/errors.hpp"
#include "mlturn/pulse_train.hpp"

namespace mlturn {

/// One lossless line section.
struct LineSection {
    double y1 = 0.0;     ///< characteristic admittance, S
    double tau1 = 0.0;   ///< per-unit-length delay, s/m
    double length = 0.0; ///< m

    /// Throws std::invalid_argument unless all fields are strictly positive
    /// and finite.
    void validate() const;

    /// One-way propagation delay length*tau1.
    [[nodiscard]] double delay() const noexcept { return length * tau1; }
};

/// Far-end termination. The infinite-admittance (short) and zero-admittance
/// (open) limits are explicit variants so no floating-point infinities enter
/// the arithmetic.
struct Termination {
    enum class Kind { Admittance, Open, Short };

    Kind kind = Kind::Open;
    double y2 = 0.0; ///< S, meaningful only for Kind::Admittance; >= 0

    [[nodiscard]] static Termination open() noexcept { return {Kind::Open, 0.0}; }
    [[nodiscard]] static Termination shorted() noexcept { return {Kind::Short, 0.0}; }
    [[nodiscard]] static Termination admittance(double y2);
};

/// The three leading response components of one line section.
struct PrimaryComponents {
    PulseTerm v0;       ///< first pulse through to the far end, delay l*tau1
    PulseTerm v1_prime; ///< immediate source-side reflection, delay 0
    PulseTerm v1_double_prime; ///< first round-trip return, delay 2*l*tau1
};

/// Source-side reflection coefficient (y1 - y0)/(y1 + y0) seen by a wave
/// travelling back toward the source. Throws DegenerateSource unless y0 is
/// finite and strictly positive.
[[nodiscard]] double source_reflection(double y1, double y0);

/// Far-end reflection coefficient (Y1 - Y2)/(Y2 + Y1); open -> +1,
/// short -> -1, matched -> 0. Always in [-1, 1].
[[nodiscard]] double reflection_far(double y1, const Termination& far);

/// Far-end transmission factor 2*Y1/(Y1 + Y2); open -> 2, short -> 0.
[[nodiscard]] double transmission_far(double y1, const Termination& far);

/// Leading components:
///   v0.gain   = (2Y0/(Y0+Y1)) * (2Y1/(Y1+Y2))          at delay l*tau1
///   v1'.gain  = (Y0-Y1)/(Y0+Y1)                        at delay 0
///   v1''.gain = (2Y0/(Y0+Y1)) * (2Y1/(Y0+Y1)) * Gf     at delay 2*l*tau1
/// where Gf is reflection_far. The source side is always a plain admittance.
[[nodiscard]] PrimaryComponents primary_components(const LineSection& sec, double y0,
                                                   const Termination& far);

/// Far-end response: floor(k_ref/2)+1 terms, term k carrying gain
/// v0.gain * (Gf*Gs)^k at delay (2k+1)*l*tau1, normalized. k_ref counts
/// individual reflections and must be >= 0.
[[nodiscard]] PulseTrain far_response(const LineSection& sec, double y0,
                                      const Termination& far, int k_ref);

/// Near-end response: v1' at delay 0, v1'' at 2*l*tau1, then
/// floor((k_ref-1)/2) further terms v1''.gain * (Gf*Gs)^k at 2(k+1)*l*tau1,
/// normalized. The incident V_in itself is not part of the response.
[[nodiscard]] PulseTrain near_response(const LineSection& sec, double y0,
                                       const Termination& far, int k_ref);

} // namespace mlturn
