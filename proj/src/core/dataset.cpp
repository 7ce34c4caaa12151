// SPDX-License-Identifier: Apache-2.0

#include "core/dataset.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace mccm {

namespace {

using nlohmann::json;

SpdMatrix parse_record_matrix(const json& j, std::size_t line,
                              std::string* label_out) {
  if (!j.is_object()) {
    throw ParseLineError("dataset: line is not a JSON object", line);
  }
  if (!j.contains("label") || !j["label"].is_string()) {
    throw ParseLineError("dataset: missing string field 'label'", line);
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer() ||
      j["dim"].get<int>() < 1) {
    throw ParseLineError("dataset: missing positive integer field 'dim'", line);
  }
  if (!j.contains("matrix") || !j["matrix"].is_array()) {
    throw ParseLineError("dataset: missing array field 'matrix'", line);
  }
  const int d = j["dim"].get<int>();
  const auto& arr = j["matrix"];
  if (static_cast<int>(arr.size()) != d * d) {
    std::ostringstream os;
    os << "dataset: 'matrix' has " << arr.size() << " entries, expected "
       << d * d;
    throw ParseLineError(os.str(), line);
  }
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      const auto& v = arr[static_cast<std::size_t>(r) * d + c];
      if (!v.is_number()) {
        throw ParseLineError("dataset: non-numeric matrix entry", line);
      }
      m(r, c) = v.get<double>();
    }
  }
  *label_out = j["label"].get<std::string>();

  try {
    return SpdMatrix::checked(std::move(m));
  } catch (const Error& e) {
    // Report the offending line along with the smallest eigenvalue of the
    // symmetrized matrix (best effort for asymmetric input).
    Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    double min_eig = 0.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    if (eig.info() == Eigen::Success) {
      min_eig = eig.eigenvalues()(0);
    }
    std::ostringstream os;
    os << "dataset line " << line << ": " << e.what();
    throw InvalidRecordError(os.str(), line, min_eig);
  }
}

}  // namespace

std::vector<LabeledPoint> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "load_dataset: cannot open " + path);
  }
  std::vector<LabeledPoint> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ParseLineError(
          "dataset: invalid JSON (" + std::string(e.what()) + ")", line_no);
    }
    std::string label;
    SpdMatrix m = parse_record_matrix(j, line_no, &label);
    if (!out.empty() && m.dim() != out.front().point.dim()) {
      std::ostringstream os;
      os << "dataset: dim " << m.dim() << " at line " << line_no
         << " differs from dim " << out.front().point.dim();
      throw ParseLineError(os.str(), line_no);
    }
    out.push_back(LabeledPoint{std::move(label), std::move(m)});
  }
  return out;
}

std::string dataset_line(const LabeledPoint& record) {
  const int d = record.point.dim();
  std::string out = nlohmann::json(record.label).dump();
  out.insert(0, "{\"label\":");
  out += ",\"dim\":";
  out += std::to_string(d);
  out += ",\"matrix\":[";
  char buf[32];
  const Eigen::MatrixXd& m = record.point.mat();
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
      out += buf;
      if (r != d - 1 || c != d - 1) {
        out += ',';
      }
    }
  }
  out += "]}";
  return out;
}

void save_dataset(const std::string& path,
                  const std::vector<LabeledPoint>& records) {
  std::ofstream out(path);
  if (!out) {
    throw Error(ErrorCode::IoError, "save_dataset: cannot open " + path);
  }
  for (const LabeledPoint& r : records) {
    out << dataset_line(r) << '\n';
  }
  if (!out) {
    throw Error(ErrorCode::IoError, "save_dataset: write failed for " + path);
  }
}

}  // namespace mccm
