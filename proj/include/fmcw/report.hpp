#pragma once

#include <iosfwd>
#include <string>

#include "fmcw/bench.hpp"

namespace fmcw::bench {

/// Deterministic shortest-round-trip formatting ("." decimal separator).
std::string format_number(double value);

/// CSV with a header row: label,value,std_dev,units.
void write_csv(const ExperimentReport& report, std::ostream& out);

/// Aligned-column markdown table with seed/version/footnote footer.
void write_markdown(const ExperimentReport& report, std::ostream& out);

/// CSV plot data: time_s,displacement_m.
void write_trace_csv(const DisplacementTrace& trace, std::ostream& out);

/// CSV plot data: window_start_s,hr_bpm,rr_brpm.
void write_estimates_csv(const std::vector<VitalsEstimate>& estimates, std::ostream& out);

}  // namespace fmcw::bench
