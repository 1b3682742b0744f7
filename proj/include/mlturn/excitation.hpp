// Exciting e.m.f. shapes, the half-e.m.f. input voltage, and sampled
// waveforms with peak measurement.
#pragma once

#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "mlturn/errors.hpp"
#include "mlturn/pulse_train.hpp"

namespace mlturn {

/// Uniformly sampled voltage-vs-time record.
struct Waveform {
    double t0 = 0.0; ///< s, time of sample 0
    double dt = 0.0; ///< s, strictly positive
    Eigen::VectorXd samples;

    [[nodiscard]] double time_at(Eigen::Index i) const noexcept { return t0 + dt * static_cast<double>(i); }
    [[nodiscard]] double span() const noexcept { return dt * static_cast<double>(samples.size() - 1); }

    /// Throws std::invalid_argument unless dt > 0, size >= 2, all samples finite.
    void validate() const;
};

/// Piecewise-linear pulse: linear rise to the peak, flat top, linear fall.
struct TrapezoidShape {
    double rise = 0.0; ///< s
    double top = 0.0;  ///< s
    double fall = 0.0; ///< s
};

/// exp(-4 ln2 (t-center)^2 / fwhm^2), causally truncated at t = 0.
struct GaussianShape {
    double fwhm = 0.0;   ///< s, full width at half maximum
    double center = 0.0; ///< s, peak position; must be >= 2*fwhm so the
                         ///< truncated leading tail is below 2^-16 of the peak
};

/// Arbitrary unit-amplitude shape on a uniform grid, linearly interpolated
/// between samples and zero outside the grid span.
struct SampledShape {
    Waveform grid;
};

/// The exciting e.m.f. E(t): a shape scaled by emf_amplitude. The input
/// voltage actually launched into the structure is V_in(t) = E(t)/2 (matched
/// source divider).
struct ExcitationSpec {
    std::variant<TrapezoidShape, GaussianShape, SampledShape> shape =
        TrapezoidShape{50e-12, 100e-12, 50e-12};
    double emf_amplitude = 2.0; ///< V, the E peak

    /// Throws std::invalid_argument on non-positive durations/amplitude or a
    /// gaussian center closer than 2*fwhm to t = 0.
    void validate() const;

    /// Time after which the pulse has returned to (effectively) zero:
    /// rise+top+fall, center + 3*fwhm, or the sample-grid end.
    [[nodiscard]] double total_duration() const;

    /// Fastest edge of the pulse, used to bound sampling steps:
    /// min(rise, fall) for a trapezoid, fwhm/2 for a gaussian, and 10x the
    /// grid step for a sampled shape (so dt <= effective_rise()/10 keeps the
    /// run grid at least as fine as the shape grid).
    [[nodiscard]] double effective_rise() const;

    /// Peak of |V_in| = max|E|/2, computed from the shape definition.
    [[nodiscard]] double vin_peak() const;
};

/// E(t); zero for t < 0 and beyond the pulse support.
[[nodiscard]] double emf_value(const ExcitationSpec& ex, double t);

/// V_in(t) = E(t)/2.
[[nodiscard]] double vin_value(const ExcitationSpec& ex, double t);

/// Samples sum_i gain_i * V_in(t0 + j*dt - delay_i) for j = 0..n-1,
/// evaluated analytically per sample (no interpolation error).
/// Requires n >= 2.
[[nodiscard]] Waveform sample_train(const PulseTrain& train, const ExcitationSpec& ex,
                                    double t0, double dt, Eigen::Index n);

/// For each (t_start, t_end) window returns the sample of largest absolute
/// value (signed). Windows must lie within the waveform span and must not
/// overlap. Throws EmptyWindow if a window contains no samples.
[[nodiscard]] std::vector<double> measure_pulse_peaks(
    const Waveform& w, const std::vector<std::pair<double, double>>& windows);

} // namespace mlturn
