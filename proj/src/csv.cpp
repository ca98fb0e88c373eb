#include "dofppr/csv.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>

#include "dofppr/error.hpp"

namespace dofppr {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> to_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size() || errno == ERANGE) return std::nullopt;
  return v;
}

}  // namespace

std::vector<Record> parse_csv(std::istream& in, const CsvOptions& options) {
  std::vector<Record> records;
  std::string line;
  std::size_t lineno = 0;
  bool first_row = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split(line);
    if (first_row) {
      first_row = false;
      const bool header = options.header == HeaderMode::present ||
                          (options.header == HeaderMode::detect && !to_number(fields[0]));
      if (header) continue;
    }
    auto fail = [&](const std::string& what) {
      throw Error(ErrorCode::parse_error, "line " + std::to_string(lineno) + ": " + what);
    };
    if (fields.size() < 2) fail("expected at least two columns");
    const auto t = to_number(fields[0]);
    const auto y = to_number(fields[1]);
    if (!t) fail("time is not a number: '" + fields[0] + "'");
    if (!y) fail("value is not a number: '" + fields[1] + "'");
    Record rec{*t, *y, std::nullopt};
    if (options.weights_col > 0 && options.weights_col <= fields.size() &&
        !fields[options.weights_col - 1].empty()) {
      const auto w = to_number(fields[options.weights_col - 1]);
      if (!w) fail("weight is not a number: '" + fields[options.weights_col - 1] + "'");
      rec.w = *w;
    }
    records.push_back(rec);
  }
  if (in.bad()) throw Error(ErrorCode::io_error, "read error");
  return records;
}

TimeSeries read_csv(std::istream& in, const CsvOptions& options) {
  const auto records = parse_csv(in, options);
  return ingest(records);
}

TimeSeries read_csv_file(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return read_csv(in, options);
}

}  // namespace dofppr
