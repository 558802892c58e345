#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sporgen/bigint.hpp"

namespace sporgen {

// Rows of string cells rendered as CSV or as a JSON array of objects keyed by
// column name. Both renderings carry exactly the same cells.
struct TextTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

enum class ReportFormat { Csv, Json };

void write_table(std::ostream& out, const TextTable& table, ReportFormat format);

// One entry of a results table: an exact proportion, a lower bound, or n/a.
struct ReportRow {
  std::string group;
  std::uint64_t p = 0;
  enum class Kind { Exact, Bound, NotApplicable } kind = Kind::NotApplicable;
  std::optional<Rational> value;
};

// Columns group, p, kind, value (exact rational), decimal5.
TextTable report_table(const std::vector<ReportRow>& rows);

}  // namespace sporgen
