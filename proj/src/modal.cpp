#include "mlturn/modal.hpp"

#include <cmath>
#include <sstream>

namespace mlturn {

namespace {

const char* kind_name(MatrixKind kind) {
    switch (kind) {
    case MatrixKind::Capacitance: return "capacitance";
    case MatrixKind::Inductance: return "inductance";
    case MatrixKind::Impedance: return "impedance";
    }
    return "unknown";
}

} // namespace

Eigen::Matrix2d SymmetricMatrix2::to_matrix() const {
    Eigen::Matrix2d m;
    m << m11, m12, m12, m11;
    return m;
}

void SymmetricMatrix2::validate(const std::string& label) const {
    std::ostringstream msg;
    if (!std::isfinite(m11) || !std::isfinite(m12)) {
        msg << label << " (" << kind_name(kind) << "): entries must be finite";
        throw NonPositiveDefinite(msg.str());
    }
    if (m11 <= 0.0 || even() <= 0.0 || odd() <= 0.0) {
        msg << label << " (" << kind_name(kind) << "): matrix is not positive definite"
            << " (m11 = " << m11 << ", m11+m12 = " << even() << ", m11-m12 = " << odd()
            << "; all must be > 0)";
        throw NonPositiveDefinite(msg.str());
    }
}

void ModalParameters::validate() const {
    const bool ok = std::isfinite(y_even) && std::isfinite(y_odd) && std::isfinite(tau_even) &&
                    std::isfinite(tau_odd) && y_even > 0.0 && y_odd > 0.0 && tau_even > 0.0 &&
                    tau_odd > 0.0;
    if (!ok) {
        std::ostringstream msg;
        msg << "modal parameters must be strictly positive and finite"
            << " (y_even = " << y_even << " S, y_odd = " << y_odd << " S, tau_even = " << tau_even
            << " s/m, tau_odd = " << tau_odd << " s/m)";
        throw NonPositiveDefinite(msg.str());
    }
}

std::optional<std::string> ModalParameters::mode_ordering_warning() const {
    if (y_odd >= y_even) {
        return std::nullopt;
    }
    std::ostringstream msg;
    msg << "y_odd (" << y_odd << " S) < y_even (" << y_even
        << " S): unusual mode ordering for a coupled microstrip-like cross-section";
    return msg.str();
}

ModalParameters extract_modal(const SymmetricMatrix2& inductance,
                              const SymmetricMatrix2& capacitance) {
    if (inductance.kind != MatrixKind::Inductance) {
        throw std::invalid_argument("extract_modal: first argument must be an inductance matrix");
    }
    if (capacitance.kind != MatrixKind::Capacitance) {
        throw std::invalid_argument("extract_modal: second argument must be a capacitance matrix");
    }
    inductance.validate("L");
    capacitance.validate("C");

    // Even mode uses the +m12 eigenvalues of both matrices, odd mode the
    // -m12 ones; C12 enters with its stored (Maxwell, typically negative)
    // sign, so the even-mode capacitance is C11 + C12.
    ModalParameters p;
    p.y_even = std::sqrt(capacitance.even() / inductance.even());
    p.y_odd = std::sqrt(capacitance.odd() / inductance.odd());
    p.tau_even = std::sqrt(inductance.even() * capacitance.even());
    p.tau_odd = std::sqrt(inductance.odd() * capacitance.odd());
    p.validate();
    return p;
}

SymmetricMatrix2 characteristic_impedance_matrix(const ModalParameters& p) {
    p.validate();
    SymmetricMatrix2 z;
    z.kind = MatrixKind::Impedance;
    z.m11 = 0.5 * (p.z_even() + p.z_odd());
    z.m12 = 0.5 * (p.z_even() - p.z_odd());
    return z;
}

double coupling_coefficient(const ModalParameters& p) {
    p.validate();
    return std::sqrt(p.y_odd / p.y_even);
}

} // namespace mlturn
