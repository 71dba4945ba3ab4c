#pragma once

#include <iosfwd>
#include <string>

#include "cfs/cross_validation.hpp"

namespace cfs {

/// Cell-per-row CSV: `# key=value` metadata lines, a header, then one row
/// per grid cell in run order. Contains no timestamps or timings, so two
/// runs with the same configuration produce byte-identical files.
std::string report_to_csv(const CVReport& report);
void write_report_csv(const CVReport& report, std::ostream& out);

/// Full report as JSON: metadata, warnings, selector choices, every cell
/// with its confusion matrix, the per-selector best cells and averages.
/// This is the only output that carries wall-clock timings.
std::string report_to_json(const CVReport& report);

/// Human-oriented text view: one normalizer x classifier accuracy matrix
/// per selector, plus the per-selector best cells.
std::string render_matrix(const CVReport& report);

} // namespace cfs
