// Copyright 2026 The geosynth authors
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

#include "geosynth/gates.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geosynth/manifold.hpp"
#include "geosynth/pauli.hpp"

namespace geosynth {

namespace {

constexpr double kUnitaryTol = 1e-10;

UnitaryMatrix kron_power(const UnitaryMatrix& a, int count) {
  UnitaryMatrix out = UnitaryMatrix::Identity(1, 1);
  for (int i = 0; i < count; ++i) out = kron(out, a);
  return out;
}

UnitaryMatrix weight_parity(const UnitaryMatrix& control_axis, int k) {
  if (k < 2) throw std::invalid_argument("weight-parity gates need k >= 2");
  const UnitaryMatrix x = (UnitaryMatrix(2, 2) << 0, 1, 1, 0).finished();
  const UnitaryMatrix i2 = UnitaryMatrix::Identity(2, 2);
  const UnitaryMatrix controls = kron_power(control_axis, k - 1);
  const UnitaryMatrix identity_controls = kron_power(i2, k - 1);
  return 0.5 * (kron(identity_controls, i2) + kron(controls, i2) +
                kron(identity_controls, x) - kron(controls, x));
}

UnitaryMatrix parse_json_matrix(const std::string& content) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(LoadErrorCode::ParseFailure, std::string("bad JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("matrix"))
    throw LoadError(LoadErrorCode::ParseFailure, "JSON target needs fields \"n\" and \"matrix\"");
  if (!doc["n"].is_number_integer())
    throw LoadError(LoadErrorCode::ParseFailure, "field \"n\" must be an integer");
  const std::int64_t n = doc["n"].get<std::int64_t>();
  if (n < 1 || n > 12) throw LoadError(LoadErrorCode::BadDimension, "qubit count out of range");
  const std::int64_t dim = std::int64_t{1} << n;

  const auto entry = [](const nlohmann::json& cell) -> Complex {
    if (cell.is_number()) return Complex(cell.get<double>(), 0);
    if (cell.is_array() && cell.size() == 2 && cell[0].is_number() && cell[1].is_number())
      return Complex(cell[0].get<double>(), cell[1].get<double>());
    throw LoadError(LoadErrorCode::ParseFailure, "matrix entries must be numbers or [re, im] pairs");
  };

  const nlohmann::json& m = doc["matrix"];
  if (!m.is_array() || m.empty())
    throw LoadError(LoadErrorCode::ParseFailure, "field \"matrix\" must be a non-empty array");

  UnitaryMatrix out(dim, dim);
  const bool nested = m[0].is_array() && !m[0].empty() && m[0][0].is_array();
  if (nested) {
    if (static_cast<std::int64_t>(m.size()) != dim)
      throw LoadError(LoadErrorCode::BadDimension, "matrix row count does not match \"n\"");
    for (std::int64_t r = 0; r < dim; ++r) {
      if (!m[r].is_array() || static_cast<std::int64_t>(m[r].size()) != dim)
        throw LoadError(LoadErrorCode::BadDimension, "matrix row length does not match \"n\"");
      for (std::int64_t c = 0; c < dim; ++c) out(r, c) = entry(m[r][c]);
    }
  } else {
    if (static_cast<std::int64_t>(m.size()) != dim * dim)
      throw LoadError(LoadErrorCode::BadDimension, "matrix length does not match \"n\"");
    for (std::int64_t k = 0; k < dim * dim; ++k) out(k / dim, k % dim) = entry(m[k]);
  }
  return out;
}

UnitaryMatrix parse_csv_matrix(const std::string& content) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(content);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw LoadError(LoadErrorCode::ParseFailure, "bad CSV cell: '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw LoadError(LoadErrorCode::ParseFailure, "CSV target is empty");
  const std::int64_t dim = static_cast<std::int64_t>(rows.size());
  for (const auto& row : rows)
    if (static_cast<std::int64_t>(row.size()) != 2 * dim)
      throw LoadError(LoadErrorCode::BadDimension,
                      "CSV rows must hold 2 * dim interleaved re, im values");
  UnitaryMatrix out(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < dim; ++c) out(r, c) = Complex(rows[r][2 * c], rows[r][2 * c + 1]);
  return out;
}

}  // namespace

UnitaryMatrix toffoli() {
  UnitaryMatrix t = UnitaryMatrix::Identity(8, 8);
  t(6, 6) = t(7, 7) = 0;
  t(6, 7) = t(7, 6) = 1;
  return t;
}

UnitaryMatrix fredkin() {
  UnitaryMatrix f = UnitaryMatrix::Identity(8, 8);
  f(5, 5) = f(6, 6) = 0;
  f(5, 6) = f(6, 5) = 1;
  return f;
}

UnitaryMatrix weight_parity_z(int k) {
  const UnitaryMatrix z = (UnitaryMatrix(2, 2) << 1, 0, 0, -1).finished();
  return weight_parity(z, k);
}

UnitaryMatrix weight_parity_x(int k) {
  const UnitaryMatrix x = (UnitaryMatrix(2, 2) << 0, 1, 1, 0).finished();
  return weight_parity(x, k);
}

UnitaryMatrix load_unitary(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(LoadErrorCode::ParseFailure, "cannot open target file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();

  const std::size_t first = content.find_first_not_of(" \t\r\n");
  if (first == std::string::npos)
    throw LoadError(LoadErrorCode::ParseFailure, "target file is empty: " + path);

  UnitaryMatrix raw =
      content[first] == '{' ? parse_json_matrix(content) : parse_csv_matrix(content);
  try {
    qubits_from_matrix_dim(raw.rows());
  } catch (const std::invalid_argument& e) {
    throw LoadError(LoadErrorCode::BadDimension, e.what());
  }
  if (!is_unitary(raw, kUnitaryTol))
    throw LoadError(LoadErrorCode::NotUnitary, "target deviates from unitary beyond tolerance");
  return su_project_target(raw);
}

GateSpec parse_gate_spec(const std::string& text) {
  GateSpec spec;
  spec.text = text;
  if (text == "toffoli") {
    spec.kind = GateKind::Toffoli;
    return spec;
  }
  if (text == "fredkin") {
    spec.kind = GateKind::Fredkin;
    return spec;
  }
  if (text.rfind("wz:", 0) == 0 || text.rfind("wx:", 0) == 0) {
    spec.kind = text[1] == 'z' ? GateKind::WeightZ : GateKind::WeightX;
    const std::string arg = text.substr(3);
    int k = 0;
    const auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), k);
    if (ec != std::errc{} || ptr != arg.data() + arg.size() || k < 2)
      throw std::invalid_argument("weight-parity spec needs an integer k >= 2: " + text);
    spec.weight = k;
    return spec;
  }
  if (text.rfind("file:", 0) == 0 && text.size() > 5) {
    spec.kind = GateKind::File;
    spec.path = text.substr(5);
    return spec;
  }
  throw std::invalid_argument(
      "unknown target spec '" + text + "'; expected toffoli | fredkin | wz:K | wx:K | file:PATH");
}

UnitaryMatrix build_gate(const GateSpec& spec) {
  switch (spec.kind) {
    case GateKind::Toffoli: return toffoli();
    case GateKind::Fredkin: return fredkin();
    case GateKind::WeightZ: return weight_parity_z(spec.weight);
    case GateKind::WeightX: return weight_parity_x(spec.weight);
    case GateKind::File: return load_unitary(spec.path);
  }
  throw std::logic_error("unhandled gate kind");
}

}  // namespace geosynth
