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

#include "jrsp/verify.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>

#include "jrsp/errors.h"

namespace jrsp {
namespace {

constexpr double kProbabilityTolerance = 1e-9;

std::vector<int> positions_of(const QuantumState& state, const std::vector<QubitLabel>& labels) {
  std::vector<int> positions;
  positions.reserve(labels.size());
  for (const auto& label : labels) positions.push_back(state.position_of(label));
  return positions;
}

std::size_t gather_bits(std::size_t index, const std::vector<int>& positions) {
  std::size_t value = 0;
  for (std::size_t t = 0; t < positions.size(); ++t) value |= ((index >> positions[t]) & 1U) << t;
  return value;
}

}  // namespace

OrthonormalityReport check_orthonormal(const MeasurementBasis& basis) {
  OrthonormalityReport report;
  for (std::size_t r = 0; r < basis.size(); ++r) {
    const auto u = basis.vector(r);
    for (std::size_t c = 0; c < basis.size(); ++c) {
      const auto v = basis.vector(c);
      Complex gram{};
      for (std::size_t i = 0; i < u.size(); ++i) gram += std::conj(u[i]) * v[i];
      const Complex expected = r == c ? 1.0 : 0.0;
      report.max_deviation = std::max(report.max_deviation, std::abs(gram - expected));
    }
  }
  report.passed = report.max_deviation < kOrthonormalTolerance;
  return report;
}

double decomposition_check(int num_qubits, std::span<const PhaseShare> shares) {
  if (shares.size() != 2) {
    throw UsageError("decomposition check is defined for two senders, got " + std::to_string(shares.size()));
  }
  for (const auto& share : shares) {
    if (share.num_qubits() != num_qubits) throw std::domain_error("share has the wrong qubit count");
  }
  const ProtocolConfig config{num_qubits, 2, false, 0};
  const QuantumState channel = build_channel(config);
  const auto pos_a = positions_of(channel, sender_labels(config, 0));
  const auto pos_b = positions_of(channel, sender_labels(config, 1));
  const auto pos_c = positions_of(channel, receiver_labels(config));
  const MeasurementBasis basis_a = sender_basis(shares[0]);
  const MeasurementBasis basis_b = sender_basis(shares[1]);

  const std::size_t dim = std::size_t{1} << num_qubits;
  const double prefactor = 1.0 / (static_cast<double>(dim) * std::sqrt(static_cast<double>(dim)));
  const auto psi = channel.amplitudes();
  double worst = 0.0;
  std::vector<Complex> amp(dim);
  for (std::size_t ka = 0; ka < dim; ++ka) {
    const auto phi_a = basis_a.vector(ka);
    for (std::size_t kb = 0; kb < dim; ++kb) {
      const auto phi_b = basis_b.vector(kb);
      std::fill(amp.begin(), amp.end(), Complex{});
      for (std::size_t idx = 0; idx < psi.size(); ++idx) {
        amp[gather_bits(idx, pos_c)] +=
            std::conj(phi_a[gather_bits(idx, pos_a)]) * std::conj(phi_b[gather_bits(idx, pos_b)]) * psi[idx];
      }
      for (std::size_t j = 0; j < dim; ++j) {
        const double delta = shares[0].x()[j] + shares[1].x()[j];
        const double twist =
            -kTwoPi * static_cast<double>(j) * static_cast<double>(ka + kb) / static_cast<double>(dim);
        const Complex closed = prefactor * std::exp(Complex{0.0, twist}) * std::exp(Complex{0.0, delta});
        worst = std::max(worst, std::abs(amp[j] - closed));
      }
    }
  }
  return worst;
}

QuantumState sliced_receiver_state(const PreparedProtocol& prepared, const BranchOutcomes& outcomes) {
  const ProtocolConfig& config = prepared.config;
  const QuantumState& channel = prepared.channel;
  std::vector<std::vector<int>> sender_pos;
  for (int s = 0; s < config.num_senders; ++s) sender_pos.push_back(positions_of(channel, sender_labels(config, s)));
  const auto receiver = receiver_labels(config);
  const auto receiver_pos = positions_of(channel, receiver);
  std::vector<int> controller_pos;
  if (config.controlled) controller_pos = positions_of(channel, controller_labels(config));

  const std::size_t dim = std::size_t{1} << config.num_qubits;
  std::vector<Complex> residual(dim);
  const auto psi = channel.amplitudes();
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t idx = 0; idx < psi.size(); ++idx) {
    if (psi[idx] == Complex{}) continue;
    Complex weight = psi[idx];
    for (int s = 0; s < config.num_senders; ++s) {
      weight *= std::conj(prepared.bases[s].vector(outcomes.sender.at(s))[gather_bits(idx, sender_pos[s])]);
    }
    for (std::size_t n = 0; n < controller_pos.size(); ++n) {
      const bool one = (idx >> controller_pos[n]) & 1U;
      const bool minus = outcomes.controller.at(n) == ControllerOutcome::kMinus;
      weight *= (one && minus) ? -h : h;
    }
    residual[gather_bits(idx, receiver_pos)] += weight;
  }

  double norm = 0.0;
  for (const auto& a : residual) norm += std::norm(a);
  if (norm < kUnreachableProbability) throw UnreachableBranchError("sliced branch has zero weight");

  CorrectionOp op = correction(config.num_qubits, outcomes.sender);
  if (config.controlled) op = op.compose(controller_correction(config, outcomes.controller));
  const double scale = 1.0 / std::sqrt(norm);
  for (std::size_t j = 0; j < dim; ++j) residual[j] *= scale * std::polar(1.0, op.diag_phases()[j]);
  return QuantumState(std::move(residual), receiver);
}

std::uint64_t branch_count(const ProtocolConfig& config) {
  const unsigned per_party_bits = static_cast<unsigned>(config.num_qubits);
  unsigned total_bits = per_party_bits * static_cast<unsigned>(config.num_senders);
  if (config.controlled) total_bits += per_party_bits;
  if (total_bits >= 64) return std::numeric_limits<std::uint64_t>::max();
  return std::uint64_t{1} << total_bits;
}

BranchOutcomes branch_at(const ProtocolConfig& config, std::uint64_t index) {
  if (index >= branch_count(config)) throw std::domain_error("branch index out of range");
  BranchOutcomes out;
  if (config.controlled) {
    out.controller.resize(config.num_qubits);
    for (int n = config.num_qubits - 1; n >= 0; --n) {
      out.controller[n] = (index & 1U) ? ControllerOutcome::kMinus : ControllerOutcome::kPlus;
      index >>= 1;
    }
  }
  const std::uint64_t mask = (std::uint64_t{1} << config.num_qubits) - 1;
  out.sender.resize(config.num_senders);
  for (int s = config.num_senders - 1; s >= 0; --s) {
    out.sender[s] = index & mask;
    index >>= config.num_qubits;
  }
  return out;
}

bool VerificationReport::succeeded() const {
  return std::abs(total_probability - 1.0) <= kProbabilityTolerance &&
         std::abs(success_probability - 1.0) <= kProbabilityTolerance;
}

VerificationReport exhaustive_verify(const ProtocolConfig& config, const PhaseVector& spec,
                                     const VerifyOptions& options) {
  config.validate();
  const std::uint64_t count = branch_count(config);
  if (count > options.branch_cap) {
    throw ResourceError("configuration has " + std::to_string(count) + " branches; cap is " +
                            std::to_string(options.branch_cap),
                        count);
  }
  const PreparedProtocol prepared = prepare_protocol(config, spec);

  // Branch index i is the mixed-radix number whose digits are the schedule
  // outcomes, first step most significant; this matches branch_at.
  const auto& schedule = prepared.schedule;
  std::vector<std::uint64_t> strides(schedule.size(), 1);
  for (std::size_t i = schedule.size(); i-- > 1;) strides[i - 1] = strides[i] * schedule[i].options.size();

  std::vector<OutcomeRecord> records(count);
  std::vector<double> cross_errors(options.cross_check ? count : 0, 0.0);
  const std::size_t top = schedule.front().options.size();
  unsigned workers = options.threads ? options.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, top));

  // Depth-first walk that reuses each prefix's post-measurement state. Every
  // leaf sees the same projection sequence as run_branch, so records agree
  // bit for bit.
  std::function<void(std::size_t, const QuantumState&, double, std::vector<std::size_t>&, std::uint64_t)> descend =
      [&](std::size_t depth, const QuantumState& state, double probability, std::vector<std::size_t>& digits,
          std::uint64_t index) {
        if (depth == schedule.size()) {
          BranchOutcomes outcomes = outcomes_from_steps(config, digits);
          if (options.cross_check) {
            const double oracle = fidelity_global_phase(sliced_receiver_state(prepared, outcomes), prepared.target);
            records[index] = finish_branch(prepared, state, probability, std::move(outcomes)).record;
            cross_errors[index] = std::abs(oracle - records[index].fidelity);
          } else {
            records[index] = finish_branch(prepared, state, probability, std::move(outcomes)).record;
          }
          return;
        }
        const MeasurementStep& step = schedule[depth];
        for (std::size_t o = 0; o < step.options.size(); ++o) {
          Projection p = measure_project(state, step.targets, step.options[o]);
          if (!p.reachable()) {
            throw UnreachableBranchError("branch " + std::to_string(index + o * strides[depth]) +
                                         " has zero probability");
          }
          digits.push_back(o);
          descend(depth + 1, *p.post_state, probability * p.probability, digits, index + o * strides[depth]);
          digits.pop_back();
        }
      };

  auto work = [&](unsigned worker, std::exception_ptr& error) {
    try {
      const MeasurementStep& first = schedule.front();
      for (std::size_t o = worker; o < top; o += workers) {
        Projection p = measure_project(prepared.channel, first.targets, first.options[o]);
        if (!p.reachable()) throw UnreachableBranchError("branch " + std::to_string(o * strides[0]) + " has zero probability");
        std::vector<std::size_t> digits{o};
        descend(1, *p.post_state, p.probability, digits, o * strides[0]);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  std::vector<std::exception_ptr> errors(workers);
  if (workers <= 1) {
    work(0, errors[0]);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w, std::ref(errors[w]));
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  VerificationReport report{config, spec, std::move(records), 1.0, 0.0, 0.0, options.tolerance, std::nullopt};
  for (const auto& r : report.branches) {
    report.min_fidelity = std::min(report.min_fidelity, r.fidelity);
    report.total_probability += r.branch_probability;
    if (r.fidelity >= 1.0 - options.tolerance) report.success_probability += r.branch_probability;
  }
  if (options.cross_check) {
    report.max_cross_check_error = *std::max_element(cross_errors.begin(), cross_errors.end());
  }
  return report;
}

}  // namespace jrsp
