// Copyright 2026 The jrsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense state-vector engine.
//
// Index convention (shared by every module): for a state with labels
// (q_1, ..., q_n), bit (m-1) of a basis index holds the value of q_m. The
// first label is therefore the least significant bit.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace jrsp {

using Complex = std::complex<double>;
using QubitLabel = std::string;

inline constexpr int kMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-10;
inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kUnreachableProbability = 1e-14;

// Square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix operator*(const ComplexMatrix& rhs) const;

  // Max |(U^dagger U - I)_{rc}|.
  double unitarity_error() const;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

// Kronecker product under the little-endian convention: `low` acts on the
// least significant qubits, i.e. result index = i_low + dim(low) * i_high.
ComplexMatrix kron(const ComplexMatrix& low, const ComplexMatrix& high);

// Normalized pure state over labeled qubits. Immutable.
class QuantumState {
 public:
  // Validates: amplitude count is 2^labels.size(), labels are unique, total
  // qubits <= kMaxQubits (ResourceError), and the norm is 1 within
  // kNormTolerance (std::domain_error).
  QuantumState(std::vector<Complex> amplitudes, std::vector<QubitLabel> labels);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  Complex amplitude(std::size_t index) const { return amplitudes_.at(index); }
  const std::vector<QubitLabel>& labels() const { return labels_; }

  // Position of `label` in the label order; throws std::domain_error.
  int position_of(std::string_view label) const;
  bool has_label(std::string_view label) const;

  double norm_squared() const;

  QuantumState with_labels(std::vector<QubitLabel> labels) const;

 private:
  std::vector<Complex> amplitudes_;
  std::vector<QubitLabel> labels_;
};

// Labels "q1".."qn".
std::vector<QubitLabel> default_labels(int num_qubits);

// |index> on `num_qubits` qubits. Empty `labels` means default_labels.
QuantumState basis_state(int num_qubits, std::uint64_t index,
                         std::vector<QubitLabel> labels = {});

// a (low bits) followed by b (high bits); labels concatenated a-then-b.
QuantumState tensor(const QuantumState& a, const QuantumState& b);

// Applies `op` (dimension 2^targets.size()) to the listed qubits. Bit t of
// the operator's local index corresponds to targets[t].
QuantumState apply_to_qubits(const QuantumState& state,
                             std::span<const QubitLabel> targets,
                             const ComplexMatrix& op);

struct Projection {
  double probability = 0.0;
  // Renormalized remainder over the untouched labels (original relative
  // order). Empty when probability < kUnreachableProbability.
  std::optional<QuantumState> post_state;

  bool reachable() const { return post_state.has_value(); }
};

// Born-rule projection of the `targets` subsystem onto `basis_vector`.
Projection measure_project(const QuantumState& state,
                           std::span<const QubitLabel> targets,
                           std::span<const Complex> basis_vector);

// |<a|b>|. Requires identical label order.
double fidelity_global_phase(const QuantumState& a, const QuantumState& b);

}  // namespace jrsp
