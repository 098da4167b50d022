#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace plinar {

/// Ordered non-negative counts with optional opaque time labels.
struct CountSeries {
  std::vector<int> values;
  std::vector<std::string> labels;  // empty, or one per value
  std::string column = "count";

  std::span<const int> view() const { return values; }
  std::size_t size() const { return values.size(); }
  /// First n values (all of them if n exceeds the length).
  CountSeries prefix(std::size_t n) const;
};

/// Reads one header row then data rows. Lines starting with '#' and blank
/// lines are skipped; LF and CRLF both work. `column` is a header name or a
/// 1-based index; empty picks "count" if present, else the last column.
/// When another column exists, the first one is kept as labels.
CountSeries parse_csv(std::istream& in, const std::string& column = "",
                      const std::string& source = "<input>");
CountSeries ingest_csv(const std::filesystem::path& path, const std::string& column = "");

/// Writes `comments` as '#' lines, a header, then one row per value.
void write_csv(std::ostream& out, const CountSeries& series,
               std::span<const std::string> comments = {});

struct SeriesSummary {
  std::size_t n;
  long long sum;
  double mean;
  double variance;    // n - 1 denominator
  double dispersion;  // variance / mean
  int min;
  int max;
  double median;  // midpoint of the two central values for even n
  int mode;       // smallest most frequent value
};

SeriesSummary summarize(std::span<const int> values);

}  // namespace plinar
