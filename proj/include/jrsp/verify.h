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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "jrsp/protocol.h"

namespace jrsp {

inline constexpr double kOrthonormalTolerance = 1e-10;
inline constexpr double kDefaultSuccessTolerance = 1e-10;
inline constexpr std::uint64_t kDefaultBranchCap = 1'000'000;

struct OrthonormalityReport {
  double max_deviation = 0.0;  // max |G_kk' - delta_kk'|
  bool passed = false;
};

OrthonormalityReport check_orthonormal(const MeasurementBasis& basis);

// Compares every channel amplitude <phi_kA, phi_kB, j | Psi>, computed by a
// direct inner product over the full two-sender channel, against
//   2^-N * 2^(-N/2) * exp(-2*pi*i*j*(kA+kB)/2^N) * exp(i*delta_j)
// with delta = a + b. Returns the largest modulus of the difference.
// Throws UsageError unless exactly two shares are given.
double decomposition_check(int num_qubits, std::span<const PhaseShare> shares);

// Receiver state for one branch, computed straight from the channel
// amplitudes (no measure_project, no apply_to_qubits): the unnormalized
// residual is sum over matching channel indices of Psi times the conjugated
// basis components, the correction is applied through its full diagonal.
QuantumState sliced_receiver_state(const PreparedProtocol& prepared, const BranchOutcomes& outcomes);

// (2^N)^M, times 2^N when controlled. Saturates at UINT64_MAX.
std::uint64_t branch_count(const ProtocolConfig& config);

// Outcome tuple number `index` in lexicographic order over
// (k_sender1, ..., k_senderM, controller bits), last position fastest.
BranchOutcomes branch_at(const ProtocolConfig& config, std::uint64_t index);

struct VerifyOptions {
  double tolerance = kDefaultSuccessTolerance;
  std::uint64_t branch_cap = kDefaultBranchCap;
  // Recompute every branch with sliced_receiver_state and record the largest
  // fidelity disagreement.
  bool cross_check = false;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct VerificationReport {
  ProtocolConfig config;
  PhaseVector spec;
  std::vector<OutcomeRecord> branches;  // lexicographic branch order
  double min_fidelity = 0.0;
  double total_probability = 0.0;
  double success_probability = 0.0;
  double tolerance = 0.0;
  std::optional<double> max_cross_check_error;

  bool succeeded() const;
};

// Runs every branch. Throws ResourceError (requested() = branch count) when
// the count exceeds options.branch_cap.
VerificationReport exhaustive_verify(const ProtocolConfig& config, const PhaseVector& spec,
                                     const VerifyOptions& options = {});

}  // namespace jrsp
