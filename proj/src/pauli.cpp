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

#include "geosynth/pauli.hpp"

#include <bit>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace geosynth {

namespace {

constexpr int kMaxQubits = 12;  // keeps 4^n addressable; well past the design envelope

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;

// A basis word has one non-zero entry per column: column c holds
// amp(c) = i^ycount * (-1)^popcount(c & sign_mask) at row c ^ x_mask.
struct WordBits {
  std::uint64_t x_mask = 0;
  std::uint64_t sign_mask = 0;
  int y_count = 0;
};

WordBits bits_from_index(std::int64_t index, int qubits) {
  WordBits b;
  for (int pos = qubits - 1; pos >= 0; --pos) {
    const int digit = static_cast<int>(index & 3);
    index >>= 2;
    const std::uint64_t bit = std::uint64_t{1} << (qubits - 1 - pos);
    switch (digit) {
      case 1:
        b.x_mask |= bit;
        break;
      case 2:
        b.x_mask |= bit;
        b.sign_mask |= bit;
        ++b.y_count;
        break;
      case 3:
        b.sign_mask |= bit;
        break;
      default:
        break;
    }
  }
  return b;
}

Complex amplitude(const WordBits& b, std::uint64_t column) {
  static const Complex phase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex base = phase[b.y_count & 3];
  return (std::popcount(column & b.sign_mask) & 1) ? -base : base;
}

std::string trimmed(const std::string& text) {
  std::size_t first = 0;
  std::size_t last = text.size();
  while (first < last && std::isspace(static_cast<unsigned char>(text[first]))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(text[last - 1]))) --last;
  return text.substr(first, last - first);
}

}  // namespace

PauliWord::PauliWord(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
  if (digits_.empty()) throw std::invalid_argument("pauli word needs at least one factor");
  for (std::uint8_t d : digits_)
    if (d > 3) throw std::invalid_argument("pauli word digit out of range");
}

PauliWord PauliWord::from_string(std::string_view text) {
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case 'I': digits.push_back(0); break;
      case 'X': digits.push_back(1); break;
      case 'Y': digits.push_back(2); break;
      case 'Z': digits.push_back(3); break;
      default:
        throw std::invalid_argument(std::string("invalid pauli character '") + c + "'");
    }
  }
  return PauliWord(std::move(digits));
}

bool PauliWord::is_identity() const {
  for (std::uint8_t d : digits_)
    if (d != 0) return false;
  return true;
}

int PauliWord::weight() const {
  int w = 0;
  for (std::uint8_t d : digits_)
    if (d != 0) ++w;
  return w;
}

std::string PauliWord::str() const {
  static const char letters[4] = {'I', 'X', 'Y', 'Z'};
  std::string out;
  out.reserve(digits_.size());
  for (std::uint8_t d : digits_) out.push_back(letters[d]);
  return out;
}

std::int64_t algebra_dimension(int qubits) {
  if (qubits < 1 || qubits > kMaxQubits)
    throw std::invalid_argument("qubit count out of supported range");
  return (std::int64_t{1} << (2 * qubits)) - 1;
}

int qubits_from_vector_length(std::int64_t length) {
  for (int n = 1; n <= kMaxQubits; ++n)
    if (algebra_dimension(n) == length) return n;
  throw std::invalid_argument("vector length is not 4^n - 1 for any supported n");
}

int qubits_from_matrix_dim(std::int64_t dim) {
  if (dim >= 2 && (dim & (dim - 1)) == 0) {
    const int n = std::countr_zero(static_cast<std::uint64_t>(dim));
    if (n <= kMaxQubits) return n;
  }
  throw std::invalid_argument("matrix dimension is not 2^n for any supported n");
}

std::int64_t basis_index(const PauliWord& word) {
  if (word.is_identity())
    throw std::invalid_argument("the identity word has no basis index");
  std::int64_t index = 0;
  for (int pos = 0; pos < word.qubits(); ++pos) index = index * 4 + word.digit(pos);
  return index;
}

PauliWord index_to_word(std::int64_t index, int qubits) {
  if (index < 1 || index > algebra_dimension(qubits))
    throw std::invalid_argument("basis index out of range");
  std::vector<std::uint8_t> digits(qubits);
  for (int pos = qubits - 1; pos >= 0; --pos) {
    digits[pos] = static_cast<std::uint8_t>(index & 3);
    index >>= 2;
  }
  return PauliWord(std::move(digits));
}

UnitaryMatrix pauli_matrix(const PauliWord& word) {
  static const UnitaryMatrix singles[4] = {
      (UnitaryMatrix(2, 2) << 1, 0, 0, 1).finished(),
      (UnitaryMatrix(2, 2) << 0, 1, 1, 0).finished(),
      (UnitaryMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished(),
      (UnitaryMatrix(2, 2) << 1, 0, 0, -1).finished(),
  };
  UnitaryMatrix out = UnitaryMatrix::Identity(1, 1);
  for (int pos = 0; pos < word.qubits(); ++pos) out = kron(out, singles[word.digit(pos)]);
  return out;
}

Complex pauli_trace(std::int64_t index, int qubits, const UnitaryMatrix& a) {
  const std::int64_t dim = std::int64_t{1} << qubits;
  if (a.rows() != dim || a.cols() != dim)
    throw std::invalid_argument("matrix dimension does not match qubit count");
  if (index < 1 || index > algebra_dimension(qubits))
    throw std::invalid_argument("basis index out of range");
  const WordBits b = bits_from_index(index, qubits);
  Complex sum = 0;
  for (std::int64_t c = 0; c < dim; ++c)
    sum += amplitude(b, static_cast<std::uint64_t>(c)) * a(c, c ^ static_cast<std::int64_t>(b.x_mask));
  return sum;
}

UnitaryMatrix pauli_apply_left(std::int64_t index, int qubits, const UnitaryMatrix& m) {
  const std::int64_t dim = std::int64_t{1} << qubits;
  if (m.rows() != dim) throw std::invalid_argument("row count does not match qubit count");
  if (index < 1 || index > algebra_dimension(qubits))
    throw std::invalid_argument("basis index out of range");
  const WordBits b = bits_from_index(index, qubits);
  UnitaryMatrix out(m.rows(), m.cols());
  for (std::int64_t r = 0; r < dim; ++r) {
    const std::int64_t src = r ^ static_cast<std::int64_t>(b.x_mask);
    out.row(r) = amplitude(b, static_cast<std::uint64_t>(src)) * m.row(src);
  }
  return out;
}

UnitaryMatrix hermitian_from_vector(const LieVector& v) {
  const int n = qubits_from_vector_length(v.size());
  const std::int64_t dim = std::int64_t{1} << n;
  UnitaryMatrix h = UnitaryMatrix::Zero(dim, dim);
  for (std::int64_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0.0) continue;
    const WordBits b = bits_from_index(k + 1, n);
    for (std::int64_t c = 0; c < dim; ++c)
      h(c ^ static_cast<std::int64_t>(b.x_mask), c) +=
          v[k] * amplitude(b, static_cast<std::uint64_t>(c));
  }
  return h;
}

LieVector vector_from_hermitian(const UnitaryMatrix& a) {
  const int n = qubits_from_matrix_dim(a.rows());
  if (a.cols() != a.rows()) throw std::invalid_argument("matrix must be square");
  if (!is_hermitian(a, kHermitianTol))
    throw std::invalid_argument("matrix deviates from Hermitian beyond tolerance");
  if (std::abs(a.trace()) > kTraceTol)
    throw std::invalid_argument("matrix deviates from traceless beyond tolerance");
  const double dim = static_cast<double>(a.rows());
  LieVector out(algebra_dimension(n));
  for (std::int64_t k = 0; k < out.size(); ++k)
    out[k] = pauli_trace(k + 1, n, a).real() / dim;
  return out;
}

RestrictionMask::RestrictionMask(int qubits, std::vector<bool> allowed)
    : qubits_(qubits), allowed_(std::move(allowed)) {
  if (static_cast<std::int64_t>(allowed_.size()) != algebra_dimension(qubits))
    throw std::invalid_argument("mask length must be 4^n - 1");
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(allowed_.size()); ++k)
    if (allowed_[k]) indices_.push_back(k + 1);
  if (indices_.empty()) throw std::invalid_argument("restriction mask must allow at least one term");
}

RestrictionMask RestrictionMask::all(int qubits) {
  return RestrictionMask(qubits, std::vector<bool>(algebra_dimension(qubits), true));
}

RestrictionMask RestrictionMask::two_local(int qubits) {
  const std::int64_t dim = algebra_dimension(qubits);
  std::vector<bool> allowed(dim, false);
  for (std::int64_t index = 1; index <= dim; ++index) {
    int weight = 0;
    for (std::int64_t rest = index; rest != 0; rest >>= 2)
      if ((rest & 3) != 0) ++weight;
    allowed[index - 1] = weight <= 2;
  }
  return RestrictionMask(qubits, std::move(allowed));
}

RestrictionMask RestrictionMask::from_words(int qubits, const std::vector<PauliWord>& words) {
  std::vector<bool> allowed(algebra_dimension(qubits), false);
  for (const PauliWord& w : words) {
    if (w.qubits() != qubits)
      throw std::invalid_argument("restriction word '" + w.str() + "' has wrong qubit count");
    allowed[basis_index(w) - 1] = true;
  }
  return RestrictionMask(qubits, std::move(allowed));
}

RestrictionMask RestrictionMask::from_stream(int qubits, std::istream& in) {
  std::vector<PauliWord> words;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string body = trimmed(line);
    if (body.empty()) continue;
    try {
      words.push_back(PauliWord::from_string(body));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("restriction line " + std::to_string(line_no) + ": " + e.what());
    }
    if (words.back().is_identity())
      throw std::invalid_argument("restriction line " + std::to_string(line_no) +
                                  ": the identity word is not a basis term");
  }
  if (words.empty()) throw std::invalid_argument("restriction file lists no terms");
  return from_words(qubits, words);
}

RestrictionMask RestrictionMask::from_file(int qubits, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open restriction file: " + path);
  return from_stream(qubits, in);
}

bool RestrictionMask::allows(std::int64_t index) const {
  if (index < 1 || index > size()) throw std::invalid_argument("basis index out of range");
  return allowed_[index - 1];
}

LieVector apply_restriction(const RestrictionMask& mask, const LieVector& v) {
  if (v.size() != mask.size())
    throw std::invalid_argument("vector length does not match mask");
  LieVector out = LieVector::Zero(v.size());
  for (std::int64_t index : mask.allowed_indices()) out[index - 1] = v[index - 1];
  return out;
}

}  // namespace geosynth
