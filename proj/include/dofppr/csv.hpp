#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dofppr/timeseries.hpp"

namespace dofppr {

enum class HeaderMode { detect, present, absent };

struct CsvOptions {
  HeaderMode header = HeaderMode::detect;
  /// 1-based column holding weights; 0 ignores weights. Times and values are
  /// always columns 1 and 2.
  std::size_t weights_col = 3;
};

/// Parses comma-separated t,y[,w] rows. Blank lines are skipped. With
/// HeaderMode::detect the first row is a header iff its first field is not a
/// number. A missing weight field means weight 1. Throws ParseError with the
/// offending line number.
std::vector<Record> parse_csv(std::istream& in, const CsvOptions& options = {});

TimeSeries read_csv(std::istream& in, const CsvOptions& options = {});
TimeSeries read_csv_file(const std::string& path, const CsvOptions& options = {});

}  // namespace dofppr
