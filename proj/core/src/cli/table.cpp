#include "oscimedia/cli/table.hpp"

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oscimedia/errors.hpp"

namespace oscimedia::cli {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return format_number(v);
}

std::string json_number(double v) { return std::isfinite(v) ? format_number(v) : "null"; }

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

void write_csv(std::ostream& out, const ResultTable& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out << ',';
    out << csv_field(t.columns[i]);
  }
  out << '\n';
  for (const auto& [key, value] : t.provenance) {
    std::string line = value.empty() ? key + ":" : key + ": " + value;
    for (char& c : line) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    out << "# " << line << '\n';
  }
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_number(row[i]);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const ResultTable& t) {
  out << "{\n  \"columns\": [";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out << ", ";
    out << json_string(t.columns[i]);
  }
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < t.rows[r].size(); ++i) {
      if (i) out << ", ";
      out << json_number(t.rows[r][i]);
    }
    out << ']';
  }
  out << (t.rows.empty() ? "],\n" : "\n  ],\n");
  out << "  \"config\": {";
  for (std::size_t i = 0; i < t.provenance.size(); ++i) {
    out << (i ? ",\n    " : "\n    ") << json_string(t.provenance[i].first) << ": "
        << json_string(t.provenance[i].second);
  }
  out << (t.provenance.empty() ? "}\n}\n" : "\n  }\n}\n");
}

}  // namespace

void ResultTable::check() const {
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns.size()) {
      throw validation_error("table '" + name + "' row " + std::to_string(r) + " has " +
                             std::to_string(rows[r].size()) + " values, expected " +
                             std::to_string(columns.size()));
    }
  }
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw validation_error("table '" + name + "': row width does not match the columns");
  }
  rows.push_back(std::move(row));
}

void write_table(std::ostream& out, const ResultTable& table, OutputFormat format) {
  table.check();
  if (format == OutputFormat::csv) {
    write_csv(out, table);
  } else {
    write_json(out, table);
  }
}

std::string suffixed_path(const std::string& path, const std::string& name) {
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + "_" + name);
  out += p.extension();
  return out.string();
}

std::vector<std::string> emit_tables(const std::vector<ResultTable>& tables, OutputFormat format,
                                     const std::string& path, std::ostream& stdout_stream) {
  // Render everything before touching the file system, so a bad table never
  // leaves partial output behind.
  std::vector<std::string> rendered;
  for (const auto& t : tables) {
    std::ostringstream os;
    write_table(os, t, format);
    rendered.push_back(os.str());
  }
  std::vector<std::string> written;
  if (path.empty()) {
    for (std::size_t i = 0; i < rendered.size(); ++i) {
      if (i) stdout_stream << '\n';
      stdout_stream << rendered[i];
    }
    stdout_stream.flush();
    if (!stdout_stream) throw io_error("failed writing to standard output");
    return written;
  }
  for (std::size_t i = 0; i < tables.size(); ++i) {
    const std::string target = tables.size() == 1 ? path : suffixed_path(path, tables[i].name);
    std::ofstream out(target, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + target + "' for writing");
    out << rendered[i];
    out.flush();
    if (!out) throw io_error("failed writing '" + target + "'");
    written.push_back(target);
  }
  return written;
}

}  // namespace oscimedia::cli
