// SPDX-License-Identifier: Apache-2.0

#include "core/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace mccm {

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r,") == std::string::npos;
}

std::vector<double> parse_row(const std::string& line, std::size_t line_no) {
  std::vector<double> row;
  std::size_t pos = 0;
  const std::size_t len = line.size();
  while (pos < len) {
    while (pos < len && (line[pos] == ' ' || line[pos] == '\t' ||
                         line[pos] == ',' || line[pos] == '\r')) {
      ++pos;
    }
    if (pos >= len) {
      break;
    }
    std::size_t end = pos;
    while (end < len && line[end] != ' ' && line[end] != '\t' &&
           line[end] != ',' && line[end] != '\r') {
      ++end;
    }
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(line.data() + pos, line.data() + end, value);
    if (ec != std::errc() || ptr != line.data() + end) {
      std::ostringstream os;
      os << "csv: cannot parse number '" << line.substr(pos, end - pos)
         << "' at line " << line_no;
      throw ParseLineError(os.str(), line_no);
    }
    row.push_back(value);
    pos = end;
  }
  return row;
}

}  // namespace

std::vector<Eigen::MatrixXd> parse_csv_blocks(const std::string& content) {
  std::vector<Eigen::MatrixXd> blocks;
  std::vector<std::vector<double>> current;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (current.empty()) {
      return;
    }
    const std::size_t cols = current.front().size();
    Eigen::MatrixXd block(current.size(), cols);
    for (std::size_t r = 0; r < current.size(); ++r) {
      if (current[r].size() != cols) {
        std::ostringstream os;
        os << "csv: ragged block (row with " << current[r].size()
           << " values, expected " << cols << ")";
        throw ParseLineError(os.str(), line_no);
      }
      for (std::size_t c = 0; c < cols; ++c) {
        block(static_cast<int>(r), static_cast<int>(c)) = current[r][c];
      }
    }
    blocks.push_back(std::move(block));
    current.clear();
  };

  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) {
      flush();
      continue;
    }
    current.push_back(parse_row(line, line_no));
  }
  flush();
  return blocks;
}

std::vector<Eigen::MatrixXd> read_csv_blocks(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "read_csv_blocks: cannot open " + path);
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_csv_blocks(buffer.str());
}

}  // namespace mccm
