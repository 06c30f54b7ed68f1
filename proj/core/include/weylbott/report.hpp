#pragma once

#include "weylbott/ledger.hpp"

namespace weylbott {

// Machine-readable report with stable key order; byte-identical across runs
// on the same input.
std::string report_json(const LedgerRun& run);

// Column-aligned human-readable report.
std::string report_table(const LedgerRun& run);

} // namespace weylbott
