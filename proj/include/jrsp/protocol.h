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

// Joint remote preparation of equatorial states over GHZ channels.
//
// Parties: senders are lettered A, B, C, ... in order; the receiver takes the
// next letter after the last sender and the controller (if any) the one after
// that.
//
// Slot n (1-based) carries bit l_n of j = sum_n 2^(n-1) l_n. Following the
// usual ket notation |l_N ... l_1>_{X1 ... XN}, the qubit of party X in slot n
// is labeled X<N+1-n>, and every per-party label list is in slot order. For
// N = 2 the receiver list is {C2, C1}: C2 holds l_1, C1 holds l_2. The
// two-sender N = 2 channel is laid out A2 B2 C2 A1 B1 C1, i.e. the
// Kronecker product GHZ(A1 B1 C1) (x) GHZ(A2 B2 C2) with the first factor
// most significant.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jrsp/statevec.h"

namespace jrsp {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Reduces to [0, 2*pi). Throws std::domain_error on non-finite input.
double wrap_angle(double radians);

// Target phases delta_j, j = 0 .. 2^N - 1, stored reduced into [0, 2*pi).
class PhaseVector {
 public:
  PhaseVector(int num_qubits, std::vector<double> delta);

  // delta_0 = 0, remaining entries uniform in [0, 2*pi).
  static PhaseVector random(int num_qubits, std::uint64_t seed);

  int num_qubits() const { return num_qubits_; }
  std::span<const double> delta() const { return delta_; }
  double operator[](std::size_t j) const { return delta_.at(j); }

  bool operator==(const PhaseVector&) const = default;

 private:
  int num_qubits_;
  std::vector<double> delta_;
};

// One sender's additive part of the target phases.
class PhaseShare {
 public:
  PhaseShare(int num_qubits, std::vector<double> x, std::string sender_id);

  int num_qubits() const { return num_qubits_; }
  std::span<const double> x() const { return x_; }
  const std::string& sender_id() const { return sender_id_; }

 private:
  int num_qubits_;
  std::vector<double> x_;
  std::string sender_id_;
};

// 2^N vectors of dimension 2^N. The constructor checks shape only;
// check_orthonormal (verify.h) measures orthonormality.
class MeasurementBasis {
 public:
  MeasurementBasis(int num_qubits, std::vector<std::vector<Complex>> vectors);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return vectors_.size(); }
  std::span<const Complex> vector(std::size_t k) const { return vectors_.at(k); }

 private:
  int num_qubits_;
  std::vector<std::vector<Complex>> vectors_;
};

// Diagonal receiver unitary diag(exp(i*diag_phases[j])). It always factors
// into single-qubit gates diag(1, exp(i*theta_n)) on receiver slot n (the
// qubit holding l_n), with
// diag_phases[j] = sum_n bit_{n-1}(j) * theta_n (mod 2*pi).
class CorrectionOp {
 public:
  // Builds from the factored angles; diag_phases is derived.
  static CorrectionOp from_factored(std::vector<double> thetas);
  // Takes both forms as given (wrapped), without checking consistency.
  CorrectionOp(std::vector<double> diag_phases, std::vector<double> factored);

  int num_qubits() const { return static_cast<int>(factored_.size()); }
  std::span<const double> diag_phases() const { return diag_phases_; }
  std::span<const double> factored() const { return factored_; }

  // Angle addition mod 2*pi, entrywise on both forms.
  CorrectionOp compose(const CorrectionOp& other) const;

  bool is_identity(double tol = 1e-12) const;

  ComplexMatrix matrix() const;
  ComplexMatrix single_qubit_gate(int slot) const;  // slot is 1-based
  // Kronecker product of the N single-qubit gates.
  ComplexMatrix factored_matrix() const;

 private:
  std::vector<double> diag_phases_;
  std::vector<double> factored_;
};

struct ProtocolConfig {
  int num_qubits = 2;   // N
  int num_senders = 2;  // M
  bool controlled = false;
  std::uint64_t seed = 0;

  int parties_per_slot() const { return num_senders + 1 + (controlled ? 1 : 0); }
  int total_qubits() const { return parties_per_slot() * num_qubits; }

  // N >= 1 and M >= 1 (std::domain_error); total qubits within the engine
  // limit (ResourceError).
  void validate() const;

  bool operator==(const ProtocolConfig&) const = default;
};

enum class ControllerOutcome { kPlus, kMinus };

char party_letter(const ProtocolConfig& config, int party_index);
std::vector<QubitLabel> sender_labels(const ProtocolConfig& config, int sender);  // 0-based sender
std::vector<QubitLabel> receiver_labels(const ProtocolConfig& config);
std::vector<QubitLabel> controller_labels(const ProtocolConfig& config);

// amplitudes[j] = exp(i*delta_j) / sqrt(2^N). Empty labels means q1..qN.
QuantumState equatorial_state(const PhaseVector& spec, std::vector<QubitLabel> labels = {});

// Splits spec into M shares summing to delta mod 2*pi. The first M-1 shares
// are uniform in [0, 2*pi) drawn from `seed`; the last absorbs the rest.
std::vector<PhaseShare> random_phase_split(const PhaseVector& spec, int num_senders,
                                           std::uint64_t seed);

// (|0...0> + |1...1>) / sqrt(2) over `parties` qubits.
QuantumState ghz_state(int parties, std::vector<QubitLabel> labels = {});

// N GHZ states, one per slot, each shared by all parties of that slot.
QuantumState build_channel(const ProtocolConfig& config);

// Vector k has component exp(2*pi*i*j*k/2^N - i*x_j) / sqrt(2^N) at j.
MeasurementBasis sender_basis(const PhaseShare& share);

// Undoes the phase pattern left by sender outcomes k: theta_n =
// 2*pi*2^(n-1)*(sum k)/2^N.
CorrectionOp correction(int num_qubits, std::span<const std::uint64_t> outcomes);

// sigma_z on every receiver slot whose controller qubit was found in |->.
CorrectionOp controller_correction(const ProtocolConfig& config,
                                   std::span<const ControllerOutcome> outcomes);

struct BranchOutcomes {
  std::vector<std::uint64_t> sender;        // one k per sender
  std::vector<ControllerOutcome> controller;  // slot order, controlled mode only

  bool operator==(const BranchOutcomes&) const = default;
};

struct OutcomeRecord {
  BranchOutcomes outcomes;
  double branch_probability = 0.0;
  double fidelity = 0.0;
  std::vector<double> correction_angles;  // factored theta_n in slot order, radians

  bool operator==(const OutcomeRecord&) const = default;
};

// One projective measurement in protocol order: each sender's N qubits, then
// each controller qubit in slot order. options[o] is the vector for outcome o.
struct MeasurementStep {
  std::vector<QubitLabel> targets;
  std::vector<std::vector<Complex>> options;
};

// Everything about a protocol instance that does not depend on the branch.
struct PreparedProtocol {
  ProtocolConfig config;
  PhaseVector spec;
  std::vector<PhaseShare> shares;
  std::vector<MeasurementBasis> bases;
  std::vector<MeasurementStep> schedule;
  QuantumState channel;
  QuantumState target;  // equatorial_state(spec) on the receiver labels
};

PreparedProtocol prepare_protocol(const ProtocolConfig& config, const PhaseVector& spec);

struct BranchResult {
  OutcomeRecord record;
  QuantumState receiver_state;  // after correction
};

// Splits schedule outcome indices into sender k's and controller bits.
BranchOutcomes outcomes_from_steps(const ProtocolConfig& config, std::span<const std::size_t> step_outcomes);

// Applies the correction for `outcomes` to the post-measurement receiver
// state and scores it against the target.
BranchResult finish_branch(const PreparedProtocol& prepared, QuantumState residual, double probability,
                           BranchOutcomes outcomes);

// Runs one branch. With `forced`, every party's outcome is prescribed;
// otherwise outcomes are sampled by the Born rule from `sample_seed`.
BranchResult run_branch(const PreparedProtocol& prepared, const std::optional<BranchOutcomes>& forced,
                        std::uint64_t sample_seed);

// Single protocol execution. The phase split uses config.seed; sampling
// (when `forced` is empty) uses `seed`.
OutcomeRecord run_once(const ProtocolConfig& config, const PhaseVector& spec,
                       const std::optional<BranchOutcomes>& forced, std::uint64_t seed);

}  // namespace jrsp
