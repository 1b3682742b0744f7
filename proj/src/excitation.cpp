#include "mlturn/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mlturn {

namespace {

// exp(-4 ln2 x^2) has fallen to ~1.4e-11 at |x| = 3, which we treat as the
// end of the gaussian support.
constexpr double gaussian_support_fwhm = 3.0;
constexpr double four_ln2 = 2.772588722239781; // 4*ln(2)

double shape_value(const TrapezoidShape& s, double t) {
    if (t <= 0.0) {
        return 0.0;
    }
    if (t < s.rise) {
        return t / s.rise;
    }
    if (t <= s.rise + s.top) {
        return 1.0;
    }
    const double t_end = s.rise + s.top + s.fall;
    if (t < t_end) {
        return (t_end - t) / s.fall;
    }
    return 0.0;
}

double shape_value(const GaussianShape& s, double t) {
    if (t < 0.0 || t > s.center + gaussian_support_fwhm * s.fwhm) {
        return 0.0;
    }
    const double x = (t - s.center) / s.fwhm;
    return std::exp(-four_ln2 * x * x);
}

double shape_value(const SampledShape& s, double t) {
    const Waveform& g = s.grid;
    const double pos = (t - g.t0) / g.dt;
    if (pos < 0.0 || pos > static_cast<double>(g.samples.size() - 1)) {
        return 0.0;
    }
    const auto i = std::min(static_cast<Eigen::Index>(pos), g.samples.size() - 2);
    const double frac = pos - static_cast<double>(i);
    return g.samples[i] * (1.0 - frac) + g.samples[i + 1] * frac;
}

} // namespace

void Waveform::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0)) {
        throw std::invalid_argument("waveform grid must have finite t0 and dt > 0");
    }
    if (samples.size() < 2) {
        throw std::invalid_argument("waveform must contain at least 2 samples");
    }
    if (!samples.allFinite()) {
        throw std::invalid_argument("waveform samples must all be finite");
    }
}

void ExcitationSpec::validate() const {
    if (!std::isfinite(emf_amplitude) || emf_amplitude <= 0.0) {
        throw std::invalid_argument("excitation e.m.f. amplitude must be positive and finite");
    }
    if (const auto* t = std::get_if<TrapezoidShape>(&shape)) {
        if (!(t->rise > 0.0) || !(t->fall > 0.0) || t->top < 0.0 ||
            !std::isfinite(t->rise + t->top + t->fall)) {
            throw std::invalid_argument(
                "trapezoid excitation requires rise > 0, fall > 0, top >= 0, all finite");
        }
    } else if (const auto* g = std::get_if<GaussianShape>(&shape)) {
        if (!(g->fwhm > 0.0) || !std::isfinite(g->fwhm) || !std::isfinite(g->center)) {
            throw std::invalid_argument("gaussian excitation requires a positive finite fwhm");
        }
        if (g->center < 2.0 * g->fwhm) {
            std::ostringstream msg;
            msg << "gaussian center (" << g->center << " s) must be at least 2*fwhm ("
                << 2.0 * g->fwhm << " s) so the causal truncation at t = 0 is negligible";
            throw std::invalid_argument(msg.str());
        }
    } else {
        const auto& s = std::get<SampledShape>(shape);
        s.grid.validate();
        if (s.grid.t0 < 0.0) {
            throw std::invalid_argument("sampled excitation shape must start at t0 >= 0");
        }
    }
}

double ExcitationSpec::total_duration() const {
    if (const auto* t = std::get_if<TrapezoidShape>(&shape)) {
        return t->rise + t->top + t->fall;
    }
    if (const auto* g = std::get_if<GaussianShape>(&shape)) {
        return g->center + gaussian_support_fwhm * g->fwhm;
    }
    const Waveform& grid = std::get<SampledShape>(shape).grid;
    return grid.t0 + grid.span();
}

double ExcitationSpec::effective_rise() const {
    if (const auto* t = std::get_if<TrapezoidShape>(&shape)) {
        return std::min(t->rise, t->fall);
    }
    if (const auto* g = std::get_if<GaussianShape>(&shape)) {
        return 0.5 * g->fwhm;
    }
    return 10.0 * std::get<SampledShape>(shape).grid.dt;
}

double ExcitationSpec::vin_peak() const {
    if (const auto* s = std::get_if<SampledShape>(&shape)) {
        return 0.5 * std::abs(emf_amplitude) * s->grid.samples.cwiseAbs().maxCoeff();
    }
    return 0.5 * std::abs(emf_amplitude);
}

double emf_value(const ExcitationSpec& ex, double t) {
    const double shape = std::visit([t](const auto& s) { return shape_value(s, t); }, ex.shape);
    return ex.emf_amplitude * shape;
}

double vin_value(const ExcitationSpec& ex, double t) {
    return 0.5 * emf_value(ex, t);
}

Waveform sample_train(const PulseTrain& train, const ExcitationSpec& ex, double t0, double dt,
                      Eigen::Index n) {
    ex.validate();
    if (n < 2) {
        throw std::invalid_argument("sample_train requires at least 2 samples");
    }
    if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(t0)) {
        throw std::invalid_argument("sample_train requires finite t0 and dt > 0");
    }
    Waveform w;
    w.t0 = t0;
    w.dt = dt;
    w.samples = Eigen::VectorXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double t = t0 + dt * static_cast<double>(j);
        double value = 0.0;
        for (const PulseTerm& term : train.terms) {
            value += term.gain * vin_value(ex, t - term.delay);
        }
        w.samples[j] = value;
    }
    return w;
}

std::vector<double> measure_pulse_peaks(const Waveform& w,
                                        const std::vector<std::pair<double, double>>& windows) {
    w.validate();
    const double t_last = w.t0 + w.span();
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const auto& [lo, hi] = windows[i];
        if (!(lo < hi)) {
            throw std::invalid_argument("peak window must satisfy t_start < t_end");
        }
        if (lo < w.t0 || hi > t_last) {
            throw std::invalid_argument("peak window lies outside the waveform span");
        }
        if (i > 0 && lo < windows[i - 1].second) {
            throw std::invalid_argument("peak windows must be sorted and non-overlapping");
        }
    }

    std::vector<double> peaks;
    peaks.reserve(windows.size());
    for (const auto& [lo, hi] : windows) {
        const auto first = static_cast<Eigen::Index>(std::ceil((lo - w.t0) / w.dt));
        const auto last = static_cast<Eigen::Index>(std::floor((hi - w.t0) / w.dt));
        if (first > last) {
            std::ostringstream msg;
            msg << "peak window [" << lo << ", " << hi << "] s contains no samples (dt = " << w.dt
                << " s)";
            throw EmptyWindow(msg.str());
        }
        double best = w.samples[first];
        for (Eigen::Index j = first + 1; j <= last; ++j) {
            if (std::abs(w.samples[j]) > std::abs(best)) {
                best = w.samples[j];
            }
        }
        peaks.push_back(best);
    }
    return peaks;
}

} // namespace mlturn
