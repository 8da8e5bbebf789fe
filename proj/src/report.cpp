#include "fmcw/report.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <ostream>

namespace fmcw::bench {

std::string format_number(double value) {
    // shortest representation that round-trips the double
    std::string best;
    for (int precision = 1; precision <= 17; ++precision) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        double parsed = 0.0;
        std::sscanf(buf, "%lg", &parsed);
        if (parsed == value && (best.empty() || std::strlen(buf) < best.size())) best = buf;
    }
    return best;
}

namespace {

std::string value_cell(const ReportRow& row) {
    std::string s = format_number(row.value);
    if (row.has_std) {
        s += " +- ";
        s += format_number(row.std_dev);
    }
    return s;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

void write_csv(const ExperimentReport& report, std::ostream& out) {
    out << "label,value,std_dev,units\n";
    for (const auto& row : report.rows) {
        out << csv_escape(row.label) << ',' << format_number(row.value) << ','
            << (row.has_std ? format_number(row.std_dev) : std::string{}) << ','
            << csv_escape(row.units) << '\n';
    }
}

void write_markdown(const ExperimentReport& report, std::ostream& out) {
    const std::string headers[3] = {"Configuration", "Value", "Units"};
    std::size_t widths[3] = {headers[0].size(), headers[1].size(), headers[2].size()};
    std::vector<std::string> values;
    values.reserve(report.rows.size());
    for (const auto& row : report.rows) {
        values.push_back(value_cell(row));
        widths[0] = std::max(widths[0], row.label.size());
        widths[1] = std::max(widths[1], values.back().size());
        widths[2] = std::max(widths[2], row.units.size());
    }

    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };

    out << "# " << report.experiment << "\n\n";
    out << "| " << pad(headers[0], widths[0]) << " | " << pad(headers[1], widths[1]) << " | "
        << pad(headers[2], widths[2]) << " |\n";
    out << "| " << std::string(widths[0], '-') << " | " << std::string(widths[1], '-') << " | "
        << std::string(widths[2], '-') << " |\n";
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        out << "| " << pad(report.rows[i].label, widths[0]) << " | " << pad(values[i], widths[1])
            << " | " << pad(report.rows[i].units, widths[2]) << " |\n";
    }

    out << "\nseed: " << report.seed << "  \nversion: " << report.version << "\n";
    for (const auto& note : report.footnotes) out << "\n> " << note << "\n";
}

void write_trace_csv(const DisplacementTrace& trace, std::ostream& out) {
    out << "time_s,displacement_m\n";
    for (std::size_t i = 0; i < trace.samples_m.size(); ++i) {
        out << format_number(i / trace.rate_hz) << ',' << format_number(trace.samples_m[i])
            << '\n';
    }
}

void write_estimates_csv(const std::vector<VitalsEstimate>& estimates, std::ostream& out) {
    out << "window_start_s,hr_bpm,rr_brpm\n";
    for (const auto& e : estimates) {
        out << format_number(e.window_start_s) << ',' << format_number(e.hr_bpm) << ','
            << format_number(e.rr_brpm) << '\n';
    }
}

}  // namespace fmcw::bench
