#include "sporgen/report.hpp"

#include <nlohmann/json.hpp>

namespace sporgen {

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_table(std::ostream& out, const TextTable& table, ReportFormat format) {
  if (format == ReportFormat::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ',';
        out << csv_cell(cells[i]);
      }
      out << '\n';
    };
    line(table.columns);
    for (const auto& row : table.rows) line(row);
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < table.columns.size() && i < row.size(); ++i) obj[table.columns[i]] = row[i];
    doc.push_back(obj);
  }
  out << doc.dump(2) << '\n';
}

TextTable report_table(const std::vector<ReportRow>& rows) {
  TextTable table;
  table.columns = {"group", "p", "kind", "value", "decimal5"};
  for (const auto& r : rows) {
    std::string kind = r.kind == ReportRow::Kind::Exact ? "exact" : r.kind == ReportRow::Kind::Bound ? "bound" : "n/a";
    table.rows.push_back({r.group, std::to_string(r.p), kind, r.value ? to_string(*r.value) : "",
                          r.value ? format_decimal(*r.value, 5) : "-"});
  }
  return table;
}

}  // namespace sporgen
