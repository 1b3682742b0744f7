#include "mlturn/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace mlturn {

namespace {

constexpr int margin_left = 70;
constexpr int margin_right = 150; // room for the legend
constexpr int margin_top = 40;
constexpr int margin_bottom = 50;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#17becf"};

std::string fmt(double v, const char* spec = "%.2f") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), spec, v);
    return buf;
}

// Round tick label: trims the noise of the nice-step arithmetic.
std::string tick_label(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

double nice_step(double span) {
    const double raw = span / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double norm = raw / mag;
    if (norm < 1.5) return mag;
    if (norm < 3.5) return 2.0 * mag;
    if (norm < 7.5) return 5.0 * mag;
    return 10.0 * mag;
}

} // namespace

void write_svg(std::ostream& out, const WaveformTable& table, const PlotOptions& options) {
    table.validate();
    if (table.time.size() < 2) {
        throw Error("SVG plot needs at least two rows");
    }

    // Work in nanoseconds on the x axis.
    const Eigen::VectorXd t_ns = table.time * 1e9;
    double v_min = 0.0;
    double v_max = 0.0;
    for (const Eigen::VectorXd& col : table.columns) {
        v_min = std::min(v_min, col.minCoeff());
        v_max = std::max(v_max, col.maxCoeff());
    }
    if (v_max == v_min) {
        v_max = v_min + 1.0;
    }
    const double pad = 0.05 * (v_max - v_min);
    v_min -= pad;
    v_max += pad;
    const double t_min = t_ns[0];
    const double t_max = t_ns[t_ns.size() - 1];

    const double plot_w = options.width - margin_left - margin_right;
    const double plot_h = options.height - margin_top - margin_bottom;
    const auto x_of = [&](double t) { return margin_left + (t - t_min) / (t_max - t_min) * plot_w; };
    const auto y_of = [&](double v) {
        return margin_top + (v_max - v) / (v_max - v_min) * plot_h;
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
        << options.height << "\">\n";
    out << "  <rect width=\"" << options.width << "\" height=\"" << options.height
        << "\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        out << "  <text x=\"" << options.width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << options.title << "</text>\n";
    }

    // Grid and ticks.
    out << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
    const double x_step = nice_step(t_max - t_min);
    for (double t = std::ceil(t_min / x_step) * x_step; t <= t_max + 1e-12 * x_step; t += x_step) {
        const double x = x_of(t);
        out << "    <line x1=\"" << fmt(x) << "\" y1=\"" << margin_top << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(margin_top + plot_h) << "\" stroke=\"#dddddd\"/>\n";
        out << "    <text x=\"" << fmt(x) << "\" y=\"" << fmt(margin_top + plot_h + 16)
            << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    const double y_step = nice_step(v_max - v_min);
    for (double v = std::ceil(v_min / y_step) * y_step; v <= v_max + 1e-12 * y_step; v += y_step) {
        const double y = y_of(v);
        out << "    <line x1=\"" << margin_left << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(margin_left + plot_w) << "\" y2=\"" << fmt(y) << "\" stroke=\"#dddddd\"/>\n";
        out << "    <text x=\"" << margin_left - 8 << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\">" << tick_label(v) << "</text>\n";
    }
    out << "    <text x=\"" << fmt(margin_left + plot_w / 2) << "\" y=\""
        << options.height - 12 << "\" text-anchor=\"middle\">time, ns</text>\n";
    out << "    <text x=\"18\" y=\"" << fmt(margin_top + plot_h / 2)
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << fmt(margin_top + plot_h / 2)
        << ")\">voltage, V</text>\n";
    out << "  </g>\n";

    out << "  <rect x=\"" << margin_left << "\" y=\"" << margin_top << "\" width=\"" << fmt(plot_w)
        << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"#333333\"/>\n";

    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const char* color = palette[c % std::size(palette)];
        out << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        const Eigen::VectorXd& col = table.columns[c];
        for (Eigen::Index i = 0; i < t_ns.size(); ++i) {
            if (i > 0) {
                out << ' ';
            }
            out << fmt(x_of(t_ns[i])) << ',' << fmt(y_of(col[i]));
        }
        out << "\"/>\n";
    }

    // Legend.
    out << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t c = 0; c < table.names.size(); ++c) {
        const double y = margin_top + 14.0 + 18.0 * static_cast<double>(c);
        const double x = options.width - margin_right + 16.0;
        out << "    <line x1=\"" << fmt(x) << "\" y1=\"" << fmt(y - 4) << "\" x2=\"" << fmt(x + 22)
            << "\" y2=\"" << fmt(y - 4) << "\" stroke=\"" << palette[c % std::size(palette)]
            << "\" stroke-width=\"2\"/>\n";
        out << "    <text x=\"" << fmt(x + 28) << "\" y=\"" << fmt(y) << "\">" << table.names[c]
            << "</text>\n";
    }
    out << "  </g>\n";
    out << "</svg>\n";
}

} // namespace mlturn
