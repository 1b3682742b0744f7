// JSON run configuration: cross-section data, terminal admittance,
// excitation, sampling and oracle settings.
#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "mlturn/excitation.hpp"
#include "mlturn/modal.hpp"
#include "mlturn/oracle.hpp"
#include "mlturn/turn.hpp"

namespace mlturn {

/// Uniform output sampling grid for the respond command.
struct SamplingSpec {
    double dt = 0.0;    ///< s
    double t_end = 0.0; ///< s, inclusive end of the grid
};

/// Parsed and validated run configuration. All physical quantities in the
/// file carry unit-suffixed keys; see the README for the schema.
struct RunConfig {
    /// Present only when the config supplied matrices (kept for reporting).
    std::optional<SymmetricMatrix2> inductance; ///< H/m
    std::optional<SymmetricMatrix2> capacitance; ///< F/m

    ModalParameters modal;             ///< always resolved
    double length = 0.0;               ///< m
    std::optional<double> y0;          ///< S; std::nullopt means "matched"
    int k_ref = 0;
    ExcitationSpec excitation;
    SamplingSpec sampling;
    OracleConfig oracle;               ///< defaults unless overridden

    /// The terminal admittance to run with: the explicit value, or
    /// sqrt(y_even*y_odd) when the config said "matched".
    [[nodiscard]] double resolved_y0() const;

    [[nodiscard]] TurnConfig turn_config() const;

    /// Number of samples of the respond grid: floor(t_end/dt) + 1.
    [[nodiscard]] Eigen::Index sample_count() const;
};

/// Parses and validates a configuration object. Throws ConfigError naming
/// the offending field path on any violation.
[[nodiscard]] RunConfig load_run_config(const nlohmann::json& j);

/// Reads, parses and validates a configuration file (UTF-8 JSON).
[[nodiscard]] RunConfig load_run_config_file(const std::string& path);

} // namespace mlturn
