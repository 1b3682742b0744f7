// Per-unit-length matrices of a symmetric coupled pair and their even/odd
// mode decomposition.
#pragma once

#include <optional>
#include <string>

#include <Eigen/Core>

#include "mlturn/errors.hpp"

namespace mlturn {

enum class MatrixKind {
    Capacitance, ///< F/m, Maxwell convention (off-diagonal typically negative)
    Inductance,  ///< H/m
    Impedance,   ///< ohm
};

/// 2x2 symmetric per-unit-length matrix of a symmetric coupled pair.
/// Only the diagonal (m11) and off-diagonal (m12) entries are stored; m12
/// carries its own sign (negative for a Maxwell capacitance matrix).
struct SymmetricMatrix2 {
    double m11 = 0.0;
    double m12 = 0.0;
    MatrixKind kind = MatrixKind::Inductance;

    /// Even-mode eigenvalue m11 + m12 (conductors driven in phase).
    [[nodiscard]] double even() const noexcept { return m11 + m12; }
    /// Odd-mode eigenvalue m11 - m12 (conductors driven in anti-phase).
    [[nodiscard]] double odd() const noexcept { return m11 - m12; }

    [[nodiscard]] Eigen::Matrix2d to_matrix() const;

    /// Throws NonPositiveDefinite unless m11 > 0 and m11 +- m12 > 0 (all finite).
    void validate(const std::string& label) const;
};

/// Even/odd mode characteristic admittances and per-unit-length delays of a
/// symmetric coupled pair.
struct ModalParameters {
    double y_even = 0.0;   ///< S
    double y_odd = 0.0;    ///< S
    double tau_even = 0.0; ///< s/m
    double tau_odd = 0.0;  ///< s/m

    [[nodiscard]] double z_even() const noexcept { return 1.0 / y_even; }
    [[nodiscard]] double z_odd() const noexcept { return 1.0 / y_odd; }

    /// Throws NonPositiveDefinite unless all four fields are strictly
    /// positive and finite.
    void validate() const;

    /// A coupled microstrip-like cross-section has y_odd >= y_even
    /// (z_odd <= z_even). Returns a warning message if that ordering is
    /// violated; such parameters are unusual but not invalid.
    [[nodiscard]] std::optional<std::string> mode_ordering_warning() const;
};

/// Decomposes per-unit-length L (H/m) and C (F/m, Maxwell sign convention)
/// into even/odd mode parameters:
///   y_mode = sqrt((C11 +- C12)/(L11 +- L12)),  tau_mode = sqrt((L11 +- L12)(C11 +- C12)),
/// with the even mode taking +L12/+C12 and the odd mode -L12/-C12.
/// Throws NonPositiveDefinite if either matrix fails its kind invariant.
[[nodiscard]] ModalParameters extract_modal(const SymmetricMatrix2& inductance,
                                            const SymmetricMatrix2& capacitance);

/// Reconstructs the characteristic impedance matrix:
/// Z11 = (z_even + z_odd)/2, Z12 = (z_even - z_odd)/2.
[[nodiscard]] SymmetricMatrix2 characteristic_impedance_matrix(const ModalParameters& p);

/// Coupling coefficient k = sqrt(y_odd/y_even) = sqrt(z_even/z_odd);
/// k = 1 for an uncoupled pair.
[[nodiscard]] double coupling_coefficient(const ModalParameters& p);

} // namespace mlturn
