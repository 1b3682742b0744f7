#include "mlturn/turn.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mlturn {

void TurnConfig::validate() const {
    modal.validate();
    if (!std::isfinite(length) || length <= 0.0) {
        throw std::invalid_argument("turn length must be strictly positive and finite");
    }
    if (!std::isfinite(y0) || y0 <= 0.0) {
        std::ostringstream msg;
        msg << "terminal admittance y0 must be finite and strictly positive, got " << y0 << " S";
        throw DegenerateSource(msg.str());
    }
    if (k_ref < 2) {
        throw std::invalid_argument("turn reflection count k_ref must be >= 2");
    }
    excitation.validate();
}

NodeResponses coupled_node_responses(const ModalParameters& modal, double y0,
                                     const Termination& far_even, const Termination& far_odd,
                                     double length, int k_ref) {
    modal.validate();
    const LineSection even{modal.y_even, modal.tau_even, length};
    const LineSection odd{modal.y_odd, modal.tau_odd, length};

    const PulseTrain near_e = near_response(even, y0, far_even, k_ref);
    const PulseTrain near_o = near_response(odd, y0, far_odd, k_ref);
    const PulseTrain far_e = far_response(even, y0, far_even, k_ref);
    const PulseTrain far_o = far_response(odd, y0, far_odd, k_ref);

    NodeResponses r;
    r.v1 = combined(near_e, 0.5, near_o, 0.5);
    r.v2 = combined(near_e, 0.5, near_o, -0.5);
    r.v3 = combined(far_e, 0.5, far_o, 0.5);
    r.v4 = combined(far_e, 0.5, far_o, -0.5);
    return r;
}

NodeResponses turn_responses(const TurnConfig& cfg) {
    cfg.validate();
    const double ye = cfg.modal.y_even;
    const double yo = cfg.modal.y_odd;
    const double y0 = cfg.y0;
    const double de = cfg.length * cfg.modal.tau_even; // one-way even-mode delay
    const double do_ = cfg.length * cfg.modal.tau_odd; // one-way odd-mode delay

    // The i-indexed closed forms below are evaluated with the i-dependent
    // power grouped as a ratio, e.g. (Y0-Ye)^(i-1)/(Ye+Y0)^(i+1) =
    // ((Y0-Ye)/(Ye+Y0))^(i-1) / (Ye+Y0)^2, which is exact algebra and keeps
    // intermediate magnitudes sane at large i.
    const int near_terms = (cfg.k_ref - 1) / 2 + 1; // highest near-end index i
    const int far_terms = cfg.k_ref / 2 + 1;        // highest far-end index i

    // Shared crosstalk-style term at delay 0. On the driven conductor the two
    // mode reflections add, on the passive conductor they subtract.
    const double node1_t0 = (y0 * y0 - ye * yo) / ((y0 + ye) * (y0 + yo));
    const double node2_t0 = y0 * (yo - ye) / ((yo + y0) * (ye + y0));

    NodeResponses r;
    r.v1.terms.push_back({node1_t0, 0.0});
    r.v2.terms.push_back({node2_t0, 0.0});

    // Even-mode round trips (far end open), with the alternating sign
    // (-1)^(i+1): present with the same sign at both near-end nodes.
    const double even_coeff = 2.0 * ye * y0 / ((ye + y0) * (ye + y0));
    const double even_ratio = (y0 - ye) / (ye + y0);
    for (int i = 1; i <= near_terms; ++i) {
        const double sign = (i % 2 == 0) ? -1.0 : 1.0; // (-1)^(i+1)
        const double gain = sign * even_coeff * std::pow(even_ratio, i - 1);
        r.v1.terms.push_back({gain, 2.0 * i * de});
        r.v2.terms.push_back({gain, 2.0 * i * de});
    }

    // Odd-mode round trips (far end shorted): no alternation, opposite sign
    // at the two near-end nodes.
    const double odd_coeff = 2.0 * yo * y0 / ((yo + y0) * (yo + y0));
    const double odd_ratio = (y0 - yo) / (yo + y0);
    for (int i = 1; i <= near_terms; ++i) {
        const double gain = odd_coeff * std::pow(odd_ratio, i - 1);
        r.v1.terms.push_back({-gain, 2.0 * i * do_});
        r.v2.terms.push_back({gain, 2.0 * i * do_});
    }

    // Far-end junction: even-mode terms only, delays (2i-1)*l*tau_e, again
    // with the (-1)^(i+1) alternation.
    const double far_coeff = 2.0 * y0 / (ye + y0);
    for (int i = 1; i <= far_terms; ++i) {
        const double sign = (i % 2 == 0) ? -1.0 : 1.0; // (-1)^(i+1)
        const double gain = sign * far_coeff * std::pow(even_ratio, i - 1);
        r.v3.terms.push_back({gain, (2.0 * i - 1.0) * de});
    }

    r.v1 = normalized(std::move(r.v1));
    r.v2 = normalized(std::move(r.v2));
    r.v3 = normalized(std::move(r.v3));
    r.v4 = r.v3;
    return r;
}

} // namespace mlturn
