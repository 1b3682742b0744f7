// Minimal deterministic SVG 1.1 line-chart writer for waveform tables.
#pragma once

#include <iosfwd>
#include <string>

#include "mlturn/waveform_io.hpp"

namespace mlturn {

struct PlotOptions {
    int width = 960;   ///< px
    int height = 540;  ///< px
    std::string title; ///< optional chart title
};

/// Renders one polyline per voltage column with labeled axes (time in ns,
/// voltage in V) and a legend. Throws Error if the table has no columns or
/// fewer than two rows.
void write_svg(std::ostream& out, const WaveformTable& table, const PlotOptions& options = {});

} // namespace mlturn
