#include "mlturn/equalization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mlturn {

namespace {

double cubic_value(double k) {
    return ((k - 1.0) * k - 3.0) * k - 1.0; // k^3 - k^2 - 3k - 1
}

double cubic_derivative(double k) {
    return (3.0 * k - 2.0) * k - 3.0;
}

// One Newton step on the closed-form root: removes the last-ulp rounding of
// the surd without pulling in a general root finder.
double polish_root(double k) {
    return k - cubic_value(k) / cubic_derivative(k);
}

void check_y0(double y0) {
    if (!std::isfinite(y0) || y0 <= 0.0) {
        throw std::invalid_argument("terminal admittance y0 must be positive and finite");
    }
}

} // namespace

PulseAmplitudes pulse_amplitudes(const ModalParameters& modal, double y0) {
    modal.validate();
    check_y0(y0);
    const double ye = modal.y_even;
    const double yo = modal.y_odd;
    PulseAmplitudes a;
    a.v_c = y0 * (yo - ye) / ((yo + y0) * (ye + y0));
    a.v_o = 2.0 * y0 * yo / ((yo + y0) * (yo + y0));
    a.v_e = 2.0 * y0 * ye / ((ye + y0) * (ye + y0));
    return a;
}

double matched_admittance(const ModalParameters& modal) {
    modal.validate();
    return std::sqrt(modal.y_even * modal.y_odd);
}

std::array<double, 3> equalization_cubic_roots() {
    const double s = std::sqrt(2.0);
    return {polish_root(-1.0), polish_root(1.0 - s), polish_root(1.0 + s)};
}

double physical_coupling_root() {
    return equalization_cubic_roots()[2];
}

double normalized_equal_amplitude(double k) {
    if (!(k > 0.0) || !std::isfinite(k)) {
        throw std::invalid_argument("coupling coefficient must be positive and finite");
    }
    return (k - 1.0) / (k + 1.0);
}

double equalization_residual(const ModalParameters& modal, double y0) {
    modal.validate();
    check_y0(y0);
    return (modal.y_odd - 3.0 * modal.y_even) / y0 - modal.y_even / modal.y_odd - 1.0;
}

bool equalization_applicable(const ModalParameters& modal) {
    modal.validate();
    return modal.y_even != modal.y_odd;
}

bool check_separation(const ModalParameters& modal, double length, double pulse_duration) {
    modal.validate();
    if (!(length > 0.0) || !(pulse_duration > 0.0)) {
        throw std::invalid_argument("check_separation requires positive length and duration");
    }
    if (modal.tau_even == modal.tau_odd) {
        return false;
    }
    const double tau_min = std::min(modal.tau_even, modal.tau_odd);
    const double first_gap = 2.0 * length * tau_min;
    const double second_gap = 2.0 * length * std::abs(modal.tau_even - modal.tau_odd);
    return std::min(first_gap, second_gap) > pulse_duration;
}

EqualizedDesign design_equalized(double z_even_ohm) {
    if (!(z_even_ohm > 0.0) || !std::isfinite(z_even_ohm)) {
        throw std::invalid_argument("design_equalized requires z_even > 0");
    }
    const double k = physical_coupling_root();
    EqualizedDesign d;
    d.z_even = z_even_ohm;
    d.z_odd = z_even_ohm / (k * k);
    d.y0 = std::sqrt((1.0 / d.z_even) * (1.0 / d.z_odd));
    d.predicted_amplitude = normalized_equal_amplitude(k);
    return d;
}

EqualizationReport make_equalization_report(const ModalParameters& modal, double y0_used,
                                            double length, double pulse_duration) {
    EqualizationReport r;
    r.k = coupling_coefficient(modal);
    r.y0_matched = matched_admittance(modal);
    r.y0_used = y0_used;
    r.amplitudes = pulse_amplitudes(modal, y0_used);
    r.eq9_residual = equalization_residual(modal, y0_used);
    r.eq9_applicable = equalization_applicable(modal);
    r.separation_ok = check_separation(modal, length, pulse_duration);
    return r;
}

} // namespace mlturn
