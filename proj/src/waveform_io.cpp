#include "mlturn/waveform_io.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace mlturn {

namespace {

// Fixed %.15g formatting keeps the output deterministic across runs and
// locales (std::to_chars/ostream shortest-form would also be deterministic,
// but %.15g matches what downstream tooling expects from scientific CSV).
std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

double parse_value(std::string_view text, std::size_t line_no) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        std::ostringstream msg;
        msg << "CSV line " << line_no << ": '" << std::string(text) << "' is not a number";
        throw Error(msg.str());
    }
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

} // namespace

void WaveformTable::validate() const {
    if (names.size() != columns.size()) {
        throw std::invalid_argument("waveform table: one name per column required");
    }
    if (names.empty()) {
        throw std::invalid_argument("waveform table has no value columns");
    }
    for (const Eigen::VectorXd& col : columns) {
        if (col.size() != time.size()) {
            throw std::invalid_argument("waveform table columns must match the time column length");
        }
    }
}

void write_csv(std::ostream& out, const WaveformTable& table) {
    table.validate();
    out << "time_s";
    for (const std::string& name : table.names) {
        out << ',' << name;
    }
    out << '\n';
    for (Eigen::Index i = 0; i < table.time.size(); ++i) {
        out << format_value(table.time[i]);
        for (const Eigen::VectorXd& col : table.columns) {
            out << ',' << format_value(col[i]);
        }
        out << '\n';
    }
}

WaveformTable read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error("CSV input is empty");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const std::vector<std::string_view> header = split_fields(line);
    if (header.size() < 2 || header[0] != "time_s") {
        throw Error("CSV header must be 'time_s,<name>,...'");
    }

    WaveformTable table;
    table.names.assign(header.begin() + 1, header.end());

    std::vector<double> times;
    std::vector<std::vector<double>> cols(table.names.size());
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string_view> fields = split_fields(line);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << "CSV line " << line_no << ": expected " << header.size() << " fields, got "
                << fields.size();
            throw Error(msg.str());
        }
        times.push_back(parse_value(fields[0], line_no));
        for (std::size_t c = 0; c < cols.size(); ++c) {
            cols[c].push_back(parse_value(fields[c + 1], line_no));
        }
    }
    if (times.empty()) {
        throw Error("CSV contains a header but no data rows");
    }

    table.time = Eigen::Map<const Eigen::VectorXd>(times.data(), static_cast<Eigen::Index>(times.size()));
    for (const std::vector<double>& c : cols) {
        table.columns.emplace_back(
            Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
    }
    return table;
}

} // namespace mlturn
