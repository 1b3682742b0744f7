// Exact analytic responses as finite trains of scaled, delayed copies of the
// input pulse.
#pragma once

#include <vector>

namespace mlturn {

/// One response term: gain * V_in(t - delay).
struct PulseTerm {
    double gain = 0.0;  ///< dimensionless
    double delay = 0.0; ///< seconds, >= 0
};

/// Finite list of (gain, delay) terms. The closed-form reflection sums are
/// carried exactly in this form and only sampled at the output boundary, so
/// term-level identities can be tested without interpolation error.
struct PulseTrain {
    std::vector<PulseTerm> terms;

    /// Terms whose delays differ by less than this are merged by summing gains.
    static constexpr double merge_window_s = 1e-18;
    /// Terms with |gain| below this are dropped during normalization.
    static constexpr double min_gain = 1e-15;

    [[nodiscard]] bool empty() const noexcept { return terms.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms.size(); }
};

/// Sorts by delay, merges near-coincident delays (summing gains), and drops
/// negligible terms. Throws std::invalid_argument on a negative delay or a
/// non-finite gain/delay. Idempotent.
[[nodiscard]] PulseTrain normalized(PulseTrain train);

/// Multiplies every gain by `factor` (no re-normalization).
[[nodiscard]] PulseTrain scaled(PulseTrain train, double factor);

/// Adds `shift` seconds to every delay. Throws std::invalid_argument if any
/// resulting delay would be negative.
[[nodiscard]] PulseTrain delayed(PulseTrain train, double shift);

/// Normalized weighted union wa*a (+) wb*b.
[[nodiscard]] PulseTrain combined(const PulseTrain& a, double wa,
                                  const PulseTrain& b, double wb);

/// Sum of all gains: the step-excitation steady-state level of the train.
[[nodiscard]] double gain_sum(const PulseTrain& train);

} // namespace mlturn
