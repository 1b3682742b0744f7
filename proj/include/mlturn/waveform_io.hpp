// CSV import/export of sampled waveforms.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "mlturn/errors.hpp"

namespace mlturn {

/// A named set of equal-length columns over a shared time column.
struct WaveformTable {
    Eigen::VectorXd time;                   ///< s
    std::vector<std::string> names;         ///< column names, e.g. "V1_V"
    std::vector<Eigen::VectorXd> columns;   ///< one per name, same length as time

    void validate() const; ///< throws std::invalid_argument on shape mismatch
};

/// Writes `time_s,<name>,...` with decimal floating point (%.15g) and LF
/// line endings. Deterministic: identical tables produce identical bytes.
void write_csv(std::ostream& out, const WaveformTable& table);

/// Parses a CSV produced by write_csv (header row, numeric rows).
/// Throws Error on malformed input or when no data rows are present.
[[nodiscard]] WaveformTable read_csv(std::istream& in);

} // namespace mlturn
