// Copyright 2026 The renyi-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "renyi/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace renyi::io {

namespace {

json plane(const Matrix& m, bool imaginary) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      row.push_back(imaginary ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

void fill_plane(Matrix& m, const json& rows, bool imaginary, const char* key) {
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(m.rows()))
    throw FormatError(std::string("matrix: '") + key + "' must have one array per row");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const json& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(m.cols()))
      throw FormatError(std::string("matrix: row of '") + key + "' has the wrong length");
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw FormatError("matrix: entries must be numbers");
      const double x = v.get<double>();
      if (imaginary)
        m(i, j).imag(x);
      else
        m(i, j).real(x);
    }
  }
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", plane(m, false)},
              {"im", plane(m, true)}};
}

json to_json(const HermitianMatrix& m) {
  return json{{"dim", m.dim()}, {"re", plane(m.matrix(), false)},
              {"im", plane(m.matrix(), true)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("matrix: expected a JSON object");
  std::int64_t rows = 0, cols = 0;
  try {
    if (j.contains("dim")) {
      rows = cols = j.at("dim").get<std::int64_t>();
    } else {
      rows = j.at("rows").get<std::int64_t>();
      cols = j.at("cols").get<std::int64_t>();
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("matrix: missing or invalid shape: ") + e.what());
  }
  if (rows < 1 || cols < 1) throw FormatError("matrix: dimensions must be positive");
  Matrix m = Matrix::Zero(rows, cols);
  if (!j.contains("re")) throw FormatError("matrix: missing 're'");
  fill_plane(m, j.at("re"), false, "re");
  if (j.contains("im")) fill_plane(m, j.at("im"), true, "im");
  return m;
}

HermitianMatrix hermitian_from_json(const json& j) {
  const Matrix m = matrix_from_json(j);
  if (m.rows() != m.cols()) throw FormatError("hermitian matrix: must be square");
  try {
    return HermitianMatrix(m);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const Matrix& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return json{{"dims", {ch.dim_in(), ch.dim_out()}}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("kraus"))
    throw FormatError("channel: expected {\"dims\": [in, out], \"kraus\": [...]}");
  const json& dims = j.at("dims");
  if (!dims.is_array() || dims.size() != 2) throw FormatError("channel: 'dims' must be [in, out]");
  std::vector<Matrix> kraus;
  for (const json& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
  try {
    return QuantumChannel(dims[0].get<std::size_t>(), dims[1].get<std::size_t>(),
                          std::move(kraus));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

json to_json(const StinespringDilation& d) {
  return json{{"system_dim", d.system_dim},
              {"env_dim", d.env_dim},
              {"unitary", matrix_to_json(d.unitary)},
              {"env_state", to_json(d.env_state.hermitian())}};
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace renyi::io
