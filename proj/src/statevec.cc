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

#include "jrsp/statevec.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "jrsp/errors.h"

namespace jrsp {
namespace {

void check_qubit_count(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxQubits)) {
    throw ResourceError("state would need " + std::to_string(n) + " qubits; limit is " +
                            std::to_string(kMaxQubits),
                        n);
  }
}

// Scatters the bits of `compact` onto the listed bit positions.
std::vector<std::size_t> scatter_table(const std::vector<int>& positions) {
  std::vector<std::size_t> table(std::size_t{1} << positions.size(), 0);
  for (std::size_t compact = 0; compact < table.size(); ++compact) {
    std::size_t spread = 0;
    for (std::size_t t = 0; t < positions.size(); ++t) {
      if ((compact >> t) & 1U) spread |= std::size_t{1} << positions[t];
    }
    table[compact] = spread;
  }
  return table;
}

struct Split {
  std::vector<int> target_positions;
  std::vector<int> rest_positions;
};

Split split_positions(const QuantumState& state, std::span<const QubitLabel> targets) {
  Split split;
  std::vector<bool> used(state.num_qubits(), false);
  for (const auto& label : targets) {
    const int pos = state.position_of(label);
    if (used[pos]) throw std::domain_error("qubit '" + label + "' listed twice");
    used[pos] = true;
    split.target_positions.push_back(pos);
  }
  for (int p = 0; p < state.num_qubits(); ++p) {
    if (!used[p]) split.rest_positions.push_back(p);
  }
  return split;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (data_.size() != dim_ * dim_) {
    throw std::domain_error("matrix data has " + std::to_string(data_.size()) +
                            " entries, expected " + std::to_string(dim_ * dim_));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix m(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  }
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::domain_error("matrix dimension mismatch");
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const Complex a = (*this)(r, k);
      if (a == Complex{}) continue;
      for (std::size_t c = 0; c < dim_; ++c) m(r, c) += a * rhs(k, c);
    }
  }
  return m;
}

double ComplexMatrix::unitarity_error() const {
  const ComplexMatrix gram = adjoint() * (*this);
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const Complex expected = r == c ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(gram(r, c) - expected));
    }
  }
  return worst;
}

ComplexMatrix kron(const ComplexMatrix& low, const ComplexMatrix& high) {
  const std::size_t dl = low.dim();
  ComplexMatrix m(dl * high.dim());
  for (std::size_t hr = 0; hr < high.dim(); ++hr) {
    for (std::size_t hc = 0; hc < high.dim(); ++hc) {
      const Complex h = high(hr, hc);
      for (std::size_t lr = 0; lr < dl; ++lr) {
        for (std::size_t lc = 0; lc < dl; ++lc) {
          m(lr + dl * hr, lc + dl * hc) = low(lr, lc) * h;
        }
      }
    }
  }
  return m;
}

QuantumState::QuantumState(std::vector<Complex> amplitudes, std::vector<QubitLabel> labels)
    : amplitudes_(std::move(amplitudes)), labels_(std::move(labels)) {
  check_qubit_count(labels_.size());
  if (amplitudes_.size() != (std::size_t{1} << labels_.size())) {
    throw std::domain_error("expected " + std::to_string(std::size_t{1} << labels_.size()) +
                            " amplitudes for " + std::to_string(labels_.size()) +
                            " qubits, got " + std::to_string(amplitudes_.size()));
  }
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) throw std::domain_error("duplicate qubit label '" + label + "'");
  }
  const double norm = norm_squared();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw std::domain_error("state is not normalized (norm^2 = " + std::to_string(norm) + ")");
  }
}

int QuantumState::position_of(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::domain_error("unknown qubit label '" + std::string(label) + "'");
  return static_cast<int>(it - labels_.begin());
}

bool QuantumState::has_label(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double QuantumState::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

QuantumState QuantumState::with_labels(std::vector<QubitLabel> labels) const {
  return QuantumState(amplitudes_, std::move(labels));
}

std::vector<QubitLabel> default_labels(int num_qubits) {
  std::vector<QubitLabel> labels;
  labels.reserve(num_qubits);
  for (int q = 1; q <= num_qubits; ++q) labels.push_back("q" + std::to_string(q));
  return labels;
}

QuantumState basis_state(int num_qubits, std::uint64_t index, std::vector<QubitLabel> labels) {
  if (num_qubits < 0) throw std::domain_error("negative qubit count");
  check_qubit_count(static_cast<std::size_t>(num_qubits));
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) {
    throw std::domain_error("basis index " + std::to_string(index) + " out of range for " +
                            std::to_string(num_qubits) + " qubits");
  }
  if (labels.empty()) labels = default_labels(num_qubits);
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return QuantumState(std::move(amps), std::move(labels));
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  for (const auto& label : b.labels()) {
    if (a.has_label(label)) throw std::domain_error("tensor: label '" + label + "' on both sides");
  }
  check_qubit_count(a.labels().size() + b.labels().size());
  std::vector<Complex> amps(a.dimension() * b.dimension());
  const auto lo = a.amplitudes();
  const auto hi = b.amplitudes();
  for (std::size_t ib = 0; ib < hi.size(); ++ib) {
    if (hi[ib] == Complex{}) continue;
    for (std::size_t ia = 0; ia < lo.size(); ++ia) amps[ia + lo.size() * ib] = lo[ia] * hi[ib];
  }
  std::vector<QubitLabel> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return QuantumState(std::move(amps), std::move(labels));
}

QuantumState apply_to_qubits(const QuantumState& state, std::span<const QubitLabel> targets,
                             const ComplexMatrix& op) {
  const Split split = split_positions(state, targets);
  const std::size_t local_dim = std::size_t{1} << targets.size();
  if (op.dim() != local_dim) {
    throw std::domain_error("operator dimension " + std::to_string(op.dim()) + " does not match " +
                            std::to_string(targets.size()) + " target qubits");
  }
  if (!(op.unitarity_error() <= kUnitaryTolerance)) {
    throw std::domain_error("operator is not unitary");
  }
  const auto target_off = scatter_table(split.target_positions);
  const auto rest_off = scatter_table(split.rest_positions);
  const auto in = state.amplitudes();
  std::vector<Complex> out(in.size());
  std::vector<Complex> local(local_dim);
  for (const std::size_t base : rest_off) {
    for (std::size_t c = 0; c < local_dim; ++c) local[c] = in[base | target_off[c]];
    for (std::size_t r = 0; r < local_dim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < local_dim; ++c) acc += op(r, c) * local[c];
      out[base | target_off[r]] = acc;
    }
  }
  return QuantumState(std::move(out), state.labels());
}

Projection measure_project(const QuantumState& state, std::span<const QubitLabel> targets,
                           std::span<const Complex> basis_vector) {
  const Split split = split_positions(state, targets);
  const std::size_t local_dim = std::size_t{1} << targets.size();
  if (basis_vector.size() != local_dim) {
    throw std::domain_error("basis vector has dimension " + std::to_string(basis_vector.size()) +
                            ", expected " + std::to_string(local_dim));
  }
  double vnorm = 0.0;
  for (const auto& v : basis_vector) vnorm += std::norm(v);
  if (!(std::abs(vnorm - 1.0) <= kNormTolerance)) {
    throw std::domain_error("basis vector is not normalized");
  }

  const auto target_off = scatter_table(split.target_positions);
  const auto rest_off = scatter_table(split.rest_positions);
  const auto in = state.amplitudes();
  std::vector<Complex> remainder(rest_off.size());
  double probability = 0.0;
  for (std::size_t r = 0; r < rest_off.size(); ++r) {
    Complex acc{};
    for (std::size_t c = 0; c < local_dim; ++c) acc += std::conj(basis_vector[c]) * in[rest_off[r] | target_off[c]];
    remainder[r] = acc;
    probability += std::norm(acc);
  }

  Projection result;
  result.probability = std::clamp(probability, 0.0, 1.0);
  if (probability < kUnreachableProbability) return result;

  const double scale = 1.0 / std::sqrt(probability);
  for (auto& a : remainder) a *= scale;
  std::vector<QubitLabel> labels;
  labels.reserve(split.rest_positions.size());
  for (const int p : split.rest_positions) labels.push_back(state.labels()[p]);
  result.post_state.emplace(std::move(remainder), std::move(labels));
  return result;
}

double fidelity_global_phase(const QuantumState& a, const QuantumState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::domain_error("fidelity: qubit counts differ (" + std::to_string(a.num_qubits()) +
                            " vs " + std::to_string(b.num_qubits()) + ")");
  }
  if (a.labels() != b.labels()) throw std::domain_error("fidelity: label order differs");
  Complex overlap{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) overlap += std::conj(x[i]) * y[i];
  return std::clamp(std::abs(overlap), 0.0, 1.0);
}

}  // namespace jrsp
