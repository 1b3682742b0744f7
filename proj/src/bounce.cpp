#include "mlturn/bounce.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mlturn {

namespace {

void check_source(double y0) {
    if (!std::isfinite(y0) || y0 <= 0.0) {
        std::ostringstream msg;
        msg << "source-side admittance must be finite and strictly positive, got " << y0 << " S";
        throw DegenerateSource(msg.str());
    }
}

void check_k_ref(int k_ref) {
    if (k_ref < 0) {
        throw std::invalid_argument("reflection count k_ref must be >= 0");
    }
}

} // namespace

void LineSection::validate() const {
    const bool ok = std::isfinite(y1) && std::isfinite(tau1) && std::isfinite(length) &&
                    y1 > 0.0 && tau1 > 0.0 && length > 0.0;
    if (!ok) {
        std::ostringstream msg;
        msg << "line section must have strictly positive finite y1, tau1, length"
            << " (y1 = " << y1 << " S, tau1 = " << tau1 << " s/m, length = " << length << " m)";
        throw std::invalid_argument(msg.str());
    }
}

Termination Termination::admittance(double y2) {
    if (!std::isfinite(y2) || y2 < 0.0) {
        std::ostringstream msg;
        msg << "termination admittance must be finite and >= 0, got " << y2 << " S";
        throw std::invalid_argument(msg.str());
    }
    return {Kind::Admittance, y2};
}

double source_reflection(double y1, double y0) {
    check_source(y0);
    return (y1 - y0) / (y1 + y0);
}

double reflection_far(double y1, const Termination& far) {
    switch (far.kind) {
    case Termination::Kind::Open: return 1.0;
    case Termination::Kind::Short: return -1.0;
    case Termination::Kind::Admittance: return (y1 - far.y2) / (far.y2 + y1);
    }
    return 0.0;
}

double transmission_far(double y1, const Termination& far) {
    switch (far.kind) {
    case Termination::Kind::Open: return 2.0;
    case Termination::Kind::Short: return 0.0;
    case Termination::Kind::Admittance: return 2.0 * y1 / (y1 + far.y2);
    }
    return 0.0;
}

PrimaryComponents primary_components(const LineSection& sec, double y0, const Termination& far) {
    sec.validate();
    check_source(y0);

    const double y1 = sec.y1;
    const double into_line = 2.0 * y0 / (y0 + y1);   // source junction, forward
    const double out_of_line = 2.0 * y1 / (y0 + y1); // source junction, backward
    const double tau_l = sec.delay();

    PrimaryComponents c;
    c.v0 = {into_line * transmission_far(y1, far), tau_l};
    c.v1_prime = {(y0 - y1) / (y0 + y1), 0.0};
    c.v1_double_prime = {into_line * out_of_line * reflection_far(y1, far), 2.0 * tau_l};
    return c;
}

PulseTrain far_response(const LineSection& sec, double y0, const Termination& far, int k_ref) {
    check_k_ref(k_ref);
    const PrimaryComponents c = primary_components(sec, y0, far);
    const double round_trip = reflection_far(sec.y1, far) * source_reflection(sec.y1, y0);
    const double tau_l = sec.delay();

    PulseTrain train;
    double gain = c.v0.gain;
    for (int k = 0; k <= k_ref / 2; ++k) {
        train.terms.push_back({gain, (2.0 * k + 1.0) * tau_l});
        gain *= round_trip;
    }
    return normalized(std::move(train));
}

PulseTrain near_response(const LineSection& sec, double y0, const Termination& far, int k_ref) {
    check_k_ref(k_ref);
    const PrimaryComponents c = primary_components(sec, y0, far);
    const double round_trip = reflection_far(sec.y1, far) * source_reflection(sec.y1, y0);
    const double tau_l = sec.delay();

    PulseTrain train;
    train.terms.push_back(c.v1_prime);
    double gain = c.v1_double_prime.gain;
    for (int k = 0; k <= (k_ref - 1) / 2; ++k) {
        train.terms.push_back({gain, 2.0 * (k + 1.0) * tau_l});
        gain *= round_trip;
    }
    return normalized(std::move(train));
}

} // namespace mlturn
