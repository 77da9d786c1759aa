#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "taustat/cases.hpp"

namespace taustat {

/// Parses a case line-list: a header row naming at least the columns id, x, y, onset (any
/// order, extra columns ignored), then one case per row. Numbers use '.' as the decimal
/// point regardless of locale. RFC 4180 double-quoted fields are accepted.
///
/// Throws Error{MissingColumn} (including for an empty input), Error{UnparseableRow} with
/// the 1-based line number, or the CaseSet validation errors.
[[nodiscard]] CaseSet parse_cases_csv(std::string_view text);
[[nodiscard]] CaseSet ingest_csv(const std::filesystem::path& path);

/// Writes id,x,y,onset with shortest round-trip number formatting.
void write_cases_csv(std::ostream& out, const CaseSet& cases);

/// Splits one CSV record into fields (no embedded newlines).
[[nodiscard]] std::vector<std::string> split_csv_record(std::string_view line);

/// Shortest decimal representation that parses back to the same double.
[[nodiscard]] std::string format_double(double v);

}  // namespace taustat
