#include "oscimedia/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "oscimedia/errors.hpp"

namespace oscimedia::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineError {
 public:
  LineError(std::string_view source, int line)
      : prefix_(std::string(source) + ":" + std::to_string(line) + ": ") {}
  [[noreturn]] void fail(const std::string& msg) const { throw validation_error(prefix_ + msg); }

 private:
  std::string prefix_;
};

double to_double(std::string_view key, std::string_view text, const LineError& where) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    where.fail("'" + std::string(key) + "' expects a finite number, got '" + std::string(text) +
               "'");
  }
  return v;
}

int to_int(std::string_view key, std::string_view text, const LineError& where) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    where.fail("'" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  }
  return v;
}

std::vector<double> to_doubles(std::string_view key, std::string_view text, std::size_t count,
                               const LineError& where) {
  const auto parts = words(text);
  if (parts.size() != count) {
    where.fail("'" + std::string(key) + "' expects " + std::to_string(count) + " values");
  }
  std::vector<double> out;
  for (auto p : parts) out.push_back(to_double(key, p, where));
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::chart: return "chart";
    case Command::scan: return "scan";
    case Command::evolve: return "evolve";
    case Command::photons: return "photons";
    case Command::compare: return "compare";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::csv ? "csv" : "json";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::chart, Command::scan, Command::evolve, Command::photons,
                    Command::compare}) {
    if (to_string(c) == name) return c;
  }
  throw validation_error("unknown command '" + std::string(name) +
                         "' (expected chart, scan, evolve, photons or compare)");
}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw validation_error("unknown format '" + std::string(name) + "' (expected csv or json)");
}

std::vector<double> RhoSweep::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  out.back() = hi;
  return out;
}

void RunConfig::validate() const {
  if (!(n >= 1.0)) throw validation_error("n must satisfy n >= 1");
  if (!(b >= 0.0 && b < 1.0)) throw validation_error("b must satisfy 0 <= b < 1");
  if (!(b < n)) throw physics_domain_error("b must satisfy b < n");
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw validation_error("theta must lie in [0, pi]");
  }
  if (rho && !(*rho > 0.0)) throw validation_error("rho must be > 0");
  if (rho && rho_range) throw validation_error("rho and rho_range are mutually exclusive");
  if (rho_range) {
    if (!(rho_range->lo > 0.0)) throw validation_error("rho_range lo must be > 0");
    if (rho_range->count < 1) throw validation_error("rho_range count must be >= 1");
    if (rho_range->count == 1 ? !(rho_range->hi >= rho_range->lo)
                              : !(rho_range->hi > rho_range->lo)) {
      throw validation_error("rho_range must satisfy lo < hi");
    }
  }
  if (periods && *periods < 1) throw validation_error("periods must be >= 1");
  if (order && *order < 1) throw validation_error("order must be >= 1");
  if (!(tolerance > 0.0 && tolerance <= 1e-3)) {
    throw validation_error("tolerance must lie in (0, 1e-3]");
  }
  if (samples_per_period < 1) throw validation_error("samples_per_period must be >= 1");
  if (resolution < 16) throw validation_error("resolution must be >= 16");
  if (!(a_hi > a_lo)) throw validation_error("a_range must satisfy lo < hi");
  if (!(q_hi > q_lo)) throw validation_error("q_range must satisfy lo < hi");
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  std::vector<std::pair<std::string, std::string>> e;
  e.emplace_back("command", command ? std::string(to_string(*command)) : "");
  e.emplace_back("preset", preset.value_or(""));
  e.emplace_back("n", format_number(n));
  e.emplace_back("b", format_number(b));
  e.emplace_back("theta", format_number(theta));
  e.emplace_back("rho", rho ? format_number(*rho) : "");
  e.emplace_back("rho_range", rho_range ? format_number(rho_range->lo) + " " +
                                              format_number(rho_range->hi) + " " +
                                              std::to_string(rho_range->count)
                                        : "");
  e.emplace_back("periods", periods ? std::to_string(*periods) : "");
  e.emplace_back("order", order ? std::to_string(*order) : "");
  e.emplace_back("tolerance", format_number(tolerance));
  e.emplace_back("samples_per_period", std::to_string(samples_per_period));
  e.emplace_back("resolution", std::to_string(resolution));
  e.emplace_back("a_range", format_number(a_lo) + " " + format_number(a_hi));
  e.emplace_back("q_range", format_number(q_lo) + " " + format_number(q_hi));
  e.emplace_back("format", std::string(to_string(format)));
  return e;
}

RunConfig parse_config(std::string_view text, std::string_view source, RunConfig base) {
  RunConfig cfg = std::move(base);
  std::string section;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const LineError where(source, line_no);

    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') where.fail("unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "physics" && section != "numerics" && section != "output") {
        where.fail("unknown section [" + section + "]");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) where.fail("expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) where.fail("missing key before '='");
    if (value.empty()) where.fail("missing value for '" + key + "'");
    const std::string qualified = section.empty() ? key : section + "." + key;
    if (!seen.insert(qualified).second) where.fail("duplicate key '" + qualified + "'");

    try {
      if (section.empty()) {
        if (key == "command") {
          cfg.command = parse_command(value);
        } else if (key == "preset") {
          cfg.preset = std::string(value);
        } else {
          where.fail("unknown key '" + key + "' (top-level keys: command, preset)");
        }
      } else if (section == "physics") {
        if (key == "n") {
          cfg.n = to_double(key, value, where);
        } else if (key == "b") {
          cfg.b = to_double(key, value, where);
        } else if (key == "theta") {
          cfg.theta = to_double(key, value, where);
        } else if (key == "rho") {
          cfg.rho = to_double(key, value, where);
        } else if (key == "rho_range") {
          const auto parts = words(value);
          if (parts.size() != 3) where.fail("'rho_range' expects 'lo hi count'");
          cfg.rho_range = RhoSweep{to_double(key, parts[0], where), to_double(key, parts[1], where),
                                   to_int(key, parts[2], where)};
        } else if (key == "periods") {
          cfg.periods = to_int(key, value, where);
        } else if (key == "order") {
          cfg.order = to_int(key, value, where);
        } else {
          where.fail("unknown key '" + key + "' in [physics]");
        }
      } else if (section == "numerics") {
        if (key == "tolerance") {
          cfg.tolerance = to_double(key, value, where);
        } else if (key == "samples_per_period") {
          cfg.samples_per_period = to_int(key, value, where);
        } else if (key == "resolution") {
          cfg.resolution = to_int(key, value, where);
        } else if (key == "a_range") {
          const auto v = to_doubles(key, value, 2, where);
          cfg.a_lo = v[0];
          cfg.a_hi = v[1];
        } else if (key == "q_range") {
          const auto v = to_doubles(key, value, 2, where);
          cfg.q_lo = v[0];
          cfg.q_hi = v[1];
        } else {
          where.fail("unknown key '" + key + "' in [numerics]");
        }
      } else {
        if (key == "path") {
          cfg.path = std::string(value);
        } else if (key == "format") {
          cfg.format = parse_format(value);
        } else {
          where.fail("unknown key '" + key + "' in [output]");
        }
      }
    } catch (const validation_error& e) {
      const std::string msg = e.what();
      if (msg.rfind(std::string(source) + ":", 0) == 0) throw;
      where.fail(msg);
    }
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw io_error("error reading config file '" + path + "'");
  return parse_config(ss.str(), path, std::move(base));
}

}  // namespace oscimedia::cli
