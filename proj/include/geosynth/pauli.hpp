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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geosynth/linalg.hpp"

namespace geosynth {

// Tensor product of single-qubit factors drawn from {I, X, Y, Z}.
//
// Conventions used throughout the library:
//  * digit values: I = 0, X = 1, Y = 2, Z = 3;
//  * the leftmost factor acts on the most significant bit of a basis-state
//    index, so "XI" on two qubits is X (x) I as a matrix;
//  * the basis index of a word is the base-4 value of its digit string
//    (leftmost digit most significant), ranging over [1, 4^n - 1] for the
//    non-identity words; the all-identity word is excluded from the basis.
class PauliWord {
 public:
  explicit PauliWord(std::vector<std::uint8_t> digits);

  // Parses a string such as "IXZ".  Throws std::invalid_argument on any
  // character outside {I, X, Y, Z} or an empty string.
  static PauliWord from_string(std::string_view text);

  int qubits() const { return static_cast<int>(digits_.size()); }
  std::uint8_t digit(int position) const { return digits_.at(position); }
  const std::vector<std::uint8_t>& digits() const { return digits_; }

  bool is_identity() const;

  // Number of non-identity factors.
  int weight() const;

  std::string str() const;

  bool operator==(const PauliWord& other) const = default;

 private:
  std::vector<std::uint8_t> digits_;
};

// Dimension of the traceless Hermitian basis on n qubits: 4^n - 1.
std::int64_t algebra_dimension(int qubits);

// Recovers n from a coefficient-vector length, which must equal 4^n - 1.
int qubits_from_vector_length(std::int64_t length);

// Recovers n from a matrix dimension, which must equal 2^n.
int qubits_from_matrix_dim(std::int64_t dim);

// Base-4 value of the digit string; rejects the all-identity word.
std::int64_t basis_index(const PauliWord& word);

// Inverse of basis_index for index in [1, 4^n - 1].
PauliWord index_to_word(std::int64_t index, int qubits);

// Dense 2^n x 2^n matrix of the word, built as a repeated tensor product
// of the single-qubit factors.
UnitaryMatrix pauli_matrix(const PauliWord& word);

// Tr(G_index * a) for the basis word with the given 1-based index.  Costs
// O(2^n): every basis word has exactly one non-zero entry per column.
Complex pauli_trace(std::int64_t index, int qubits, const UnitaryMatrix& a);

// G_index * m without forming G_index, a row permutation with signs; costs
// O(size of m).
UnitaryMatrix pauli_apply_left(std::int64_t index, int qubits, const UnitaryMatrix& m);

// sum_j v[j-1] G_j as a dense Hermitian matrix.  The vector length fixes n.
UnitaryMatrix hermitian_from_vector(const LieVector& v);

// Coefficients Tr(G_j a) / 2^n of a traceless Hermitian matrix.  Throws if
// a deviates from Hermitian or traceless by more than 1e-10 in max norm.
LieVector vector_from_hermitian(const UnitaryMatrix& a);

// Subset of the basis indices that a synthesized generator may use.
class RestrictionMask {
 public:
  // allowed.size() must be 4^n - 1 with at least one entry set.
  RestrictionMask(int qubits, std::vector<bool> allowed);

  static RestrictionMask all(int qubits);

  // Words of weight at most two: single-qubit terms plus ordered pair
  // terms, 3n + 9 n (n - 1) / 2 in total.
  static RestrictionMask two_local(int qubits);

  static RestrictionMask from_words(int qubits,
                                    const std::vector<PauliWord>& words);

  // Text format: one word per line; blank lines and '#' comments ignored.
  static RestrictionMask from_stream(int qubits, std::istream& in);
  static RestrictionMask from_file(int qubits, const std::string& path);

  int qubits() const { return qubits_; }
  std::int64_t size() const { return static_cast<std::int64_t>(allowed_.size()); }
  std::int64_t count() const { return static_cast<std::int64_t>(indices_.size()); }
  bool allows(std::int64_t index) const;

  // Allowed 1-based indices in ascending order.
  const std::vector<std::int64_t>& allowed_indices() const { return indices_; }

  bool operator==(const RestrictionMask& other) const {
    return qubits_ == other.qubits_ && allowed_ == other.allowed_;
  }

 private:
  int qubits_;
  std::vector<bool> allowed_;
  std::vector<std::int64_t> indices_;
};

// Zeroes every coefficient outside the mask; exact, idempotent.
LieVector apply_restriction(const RestrictionMask& mask, const LieVector& v);

}  // namespace geosynth
