#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "oscimedia/cli/config.hpp"

namespace oscimedia::cli {

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  // Key/value provenance (config echo, tool version, preset), emitted in order.
  std::vector<std::pair<std::string, std::string>> provenance;

  // Throws validation_error if a row width differs from the column count.
  void check() const;
  void add_row(std::vector<double> row);
};

// CSV: header row, then '#'-prefixed provenance lines, then data; fields
// quoted per RFC 4180 when needed, '\n' line ends.
// JSON: {"columns": [...], "rows": [[...]], "config": {...}}; non-finite
// values become null.
// Numbers use 17 significant digits, so output is byte-stable and exact.
void write_table(std::ostream& out, const ResultTable& table, OutputFormat format);

// Writes every table. With an empty path all tables go to standard output; a
// single table goes to `path`; several tables go to "<stem>_<name><ext>".
// Returns the written paths. Throws io_error naming the path on failure.
std::vector<std::string> emit_tables(const std::vector<ResultTable>& tables, OutputFormat format,
                                     const std::string& path, std::ostream& stdout_stream);

// Path used for table `name` when several tables share one output path.
[[nodiscard]] std::string suffixed_path(const std::string& path, const std::string& name);

}  // namespace oscimedia::cli
