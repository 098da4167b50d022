#include "plinar/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>

#include "plinar/error.hpp"

namespace plinar {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string::npos) return out;
    start = comma + 1;
  }
}

std::string where(const std::string& source, int line) {
  return source + ":" + std::to_string(line);
}

}  // namespace

CountSeries CountSeries::prefix(std::size_t n) const {
  CountSeries out = *this;
  if (n < out.values.size()) {
    out.values.resize(n);
    if (!out.labels.empty()) out.labels.resize(n);
  }
  return out;
}

CountSeries parse_csv(std::istream& in, const std::string& column, const std::string& source) {
  std::string line;
  int line_no = 0;
  std::vector<std::string> header;
  std::size_t col = 0;
  std::size_t label_col = std::string::npos;
  CountSeries out;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    std::vector<std::string> fields = split(line);
    if (header.empty()) {
      header = std::move(fields);
      if (column.empty()) {
        const auto it = std::find(header.begin(), header.end(), "count");
        col = it != header.end() ? static_cast<std::size_t>(it - header.begin()) : header.size() - 1;
      } else {
        const auto it = std::find(header.begin(), header.end(), column);
        if (it != header.end()) {
          col = static_cast<std::size_t>(it - header.begin());
        } else {
          std::size_t idx = 0;
          const auto [ptr, ec] = std::from_chars(column.data(), column.data() + column.size(), idx);
          if (ec != std::errc{} || ptr != column.data() + column.size() || idx < 1 ||
              idx > header.size()) {
            fail(ErrorCode::parse_error, where(source, line_no) + ": no column '" + column + "'");
          }
          col = idx - 1;
        }
      }
      out.column = header[col];
      if (header.size() > 1) label_col = col == 0 ? 1 : 0;
      continue;
    }
    if (fields.size() != header.size()) {
      fail(ErrorCode::parse_error, where(source, line_no) + ": expected " +
                                       std::to_string(header.size()) + " fields, found " +
                                       std::to_string(fields.size()));
    }
    const std::string& cell = fields[col];
    if (cell.empty()) fail(ErrorCode::parse_error, where(source, line_no) + ": missing value");
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size() || v < 0 || v > 1'000'000'000) {
      fail(ErrorCode::invalid_value,
           where(source, line_no) + ": '" + cell + "' is not a non-negative integer");
    }
    out.values.push_back(static_cast<int>(v));
    if (label_col != std::string::npos) out.labels.push_back(fields[label_col]);
  }
  if (header.empty()) fail(ErrorCode::parse_error, source + ": no header row");
  if (out.values.empty()) fail(ErrorCode::parse_error, source + ": no data rows");
  return out;
}

CountSeries ingest_csv(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::parse_error, "cannot open " + path.string());
  return parse_csv(in, column, path.string());
}

void write_csv(std::ostream& out, const CountSeries& series, std::span<const std::string> comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  const bool labelled = !series.labels.empty();
  out << (labelled ? "label," : "") << series.column << '\n';
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    if (labelled) out << series.labels[i] << ',';
    out << series.values[i] << '\n';
  }
}

SeriesSummary summarize(std::span<const int> values) {
  if (values.size() < 2) fail(ErrorCode::degenerate_series, "summary needs at least two values");
  SeriesSummary s{};
  s.n = values.size();
  std::map<int, int> counts;
  for (int v : values) {
    s.sum += v;
    ++counts[v];
  }
  const double n = static_cast<double>(s.n);
  s.mean = static_cast<double>(s.sum) / n;
  double ss = 0.0;
  for (int v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = ss / (n - 1.0);
  s.dispersion = s.mean > 0.0 ? s.variance / s.mean : std::numeric_limits<double>::quiet_NaN();
  s.min = counts.begin()->first;
  s.max = counts.rbegin()->first;
  std::vector<int> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = s.n / 2;
  s.median = s.n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  int best = 0;
  for (const auto& [v, c] : counts) {
    if (c > best) {
      best = c;
      s.mode = v;
    }
  }
  return s;
}

}  // namespace plinar
