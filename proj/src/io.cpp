#include "hyperlap/io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>
#include <unordered_map>

namespace hyperlap {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(trim(line.substr(start)));
      break;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return fields;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t lineno, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, path + " line " + std::to_string(lineno) + ": " + what);
}

double parse_real(const std::string& path, std::size_t lineno, std::size_t field,
                  const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    parse_fail(path, lineno, "field " + std::to_string(field + 1) + " is not a number: '" + text + "'");
  }
  return value;
}

long long parse_integer(const std::string& path, std::size_t lineno, std::size_t field,
                        const std::string& text) {
  long long value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    parse_fail(path, lineno,
               "field " + std::to_string(field + 1) + " is not an integer: '" + text + "'");
  }
  return value;
}

}  // namespace

FeatureMatrix read_features(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "cannot open feature file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) parse_fail(path, lineno, "line is empty");
    const auto fields = split_csv(line);
    if (width == 0) {
      width = fields.size();
    } else if (fields.size() != width) {
      parse_fail(path, lineno,
                 "expected " + std::to_string(width) + " fields, found " +
                     std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t f = 0; f < fields.size(); ++f) {
      row[f] = parse_real(path, lineno, f, fields[f]);
      require(std::isfinite(row[f]), ErrorKind::InvalidInput,
              path + " line " + std::to_string(lineno) + ": field " + std::to_string(f + 1) +
                  " is not finite");
    }
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), ErrorKind::InvalidInput, "feature file is empty: " + path);

  FeatureMatrix x(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t f = 0; f < width; ++f) x(static_cast<Index>(i), static_cast<Index>(f)) = rows[i][f];
  }
  return x;
}

std::vector<std::pair<Index, Index>> read_label_pairs(const std::string& path, Index n) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::InvalidInput, "cannot open label file: " + path);

  std::vector<std::pair<Index, Index>> pairs;
  std::unordered_map<Index, std::size_t> first_seen;  // sample -> line number
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) parse_fail(path, lineno, "line is empty");
    const auto fields = split_csv(line);
    if (fields.size() != 2) {
      parse_fail(path, lineno,
                 "expected 'sample_index,class_index', found " + std::to_string(fields.size()) +
                     " fields");
    }
    const long long sample = parse_integer(path, lineno, 0, fields[0]);
    const long long cls = parse_integer(path, lineno, 1, fields[1]);
    if (sample < 0 || sample >= n) {
      parse_fail(path, lineno,
                 "sample index " + std::to_string(sample) + " outside [0," + std::to_string(n) + ")");
    }
    if (cls < 0) parse_fail(path, lineno, "class index must be non-negative");
    const auto [it, inserted] = first_seen.emplace(static_cast<Index>(sample), lineno);
    if (!inserted) {
      parse_fail(path, lineno,
                 "duplicate label for sample " + std::to_string(sample) + " (first on line " +
                     std::to_string(it->second) + ")");
    }
    pairs.emplace_back(static_cast<Index>(sample), static_cast<Index>(cls));
  }
  return pairs;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  require(ec == std::errc(), ErrorKind::Internal, "float formatting failed");
  return std::string(buf, ptr);
}

void write_predictions(const std::string& path, const Prediction& pred,
                       const Eigen::MatrixXd& estimates) {
  const Index n = estimates.rows();
  const Index c = estimates.cols();
  require(static_cast<Index>(pred.argmax.size()) == n, ErrorKind::Internal,
          "prediction and estimate sizes disagree");
  std::ofstream out(path, std::ios::binary);  // binary: no newline translation anywhere
  require(out.good(), ErrorKind::InvalidInput, "cannot open output file: " + path);
  for (Index i = 0; i < n; ++i) {
    out << i << ',' << pred.argmax[static_cast<std::size_t>(i)];
    for (Index j = 0; j < c; ++j) out << ',' << format_double(estimates(i, j));
    out << '\n';
  }
  require(out.good(), ErrorKind::InvalidInput, "failed writing output file: " + path);
}

}  // namespace hyperlap
