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

#pragma once

#include <stdexcept>
#include <string>

#include "geosynth/linalg.hpp"

namespace geosynth {

// Three-qubit doubly controlled NOT: flips the last bit when the first two
// are both set.
UnitaryMatrix toffoli();

// Three-qubit controlled swap: exchanges the last two bits when the first
// is set.
UnitaryMatrix fredkin();

// k-qubit gate that flips the last qubit when the Z parity of the first
// k - 1 qubits is odd:
//   (I + Z...Z (x) I + I...I (x) X - Z...Z (x) X) / 2,  k >= 2.
UnitaryMatrix weight_parity_z(int k);

// Same control structure in the X basis:
//   (I + X...X (x) I + I...I (x) X - X...X (x) X) / 2,  k >= 2.
UnitaryMatrix weight_parity_x(int k);

enum class LoadErrorCode { ParseFailure, BadDimension, NotUnitary };

class LoadError : public std::runtime_error {
 public:
  LoadError(LoadErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  LoadErrorCode code() const { return code_; }

 private:
  LoadErrorCode code_;
};

// Reads a unitary from disk and rescales it to unit determinant.
//
// Two formats are accepted.  A file whose first non-space character is '{'
// is parsed as JSON with fields "n" (qubit count) and "matrix", the latter
// either a flat row-major list of [re, im] pairs or a list of rows of such
// pairs; bare numbers are taken as purely real entries.  Anything else is
// parsed as CSV: one row per line, 2 * 2^n columns interleaving re and im.
//
// Throws LoadError with ParseFailure, BadDimension (dimension not a power
// of two, or inconsistent with "n"), or NotUnitary (deviation from unitary
// beyond 1e-10 in max norm).
UnitaryMatrix load_unitary(const std::string& path);

enum class GateKind { Toffoli, Fredkin, WeightZ, WeightX, File };

struct GateSpec {
  GateKind kind = GateKind::Toffoli;
  int weight = 0;      // k for the weight-parity families
  std::string path;    // for GateKind::File
  std::string text;    // the spec string as given
};

// Grammar: "toffoli" | "fredkin" | "wz:K" | "wx:K" | "file:PATH" with
// integer K >= 2.  Throws std::invalid_argument otherwise.
GateSpec parse_gate_spec(const std::string& text);

// Materializes the target.  File targets come back determinant-normalized
// by load_unitary; built-ins are returned as written above.
UnitaryMatrix build_gate(const GateSpec& spec);

}  // namespace geosynth
