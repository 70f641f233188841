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

#include "jrsp/protocol.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>

#include "jrsp/errors.h"

namespace jrsp {
namespace {

constexpr std::uint32_t kSplitStream = 0x5eed0001;
constexpr std::uint32_t kSampleStream = 0x5eed0002;
constexpr std::uint32_t kDeltaStream = 0x5eed0003;

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

// 53 random bits in [0, 1); identical on every standard library.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t dim_of(int num_qubits) { return std::size_t{1} << num_qubits; }

void check_num_qubits(int num_qubits) {
  if (num_qubits < 1) throw std::domain_error("N must be at least 1, got " + std::to_string(num_qubits));
  if (num_qubits > kMaxQubits) {
    throw ResourceError("N = " + std::to_string(num_qubits) + " exceeds the engine limit",
                        static_cast<std::uint64_t>(num_qubits));
  }
}

std::vector<double> wrapped(std::vector<double> values) {
  for (auto& v : values) v = wrap_angle(v);
  return values;
}

// 2*pi * (numerator mod 2^N) / 2^N, exact in the integer part.
double fourier_angle(std::uint64_t numerator, int num_qubits) {
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  return kTwoPi * static_cast<double>(numerator & (dim - 1)) / static_cast<double>(dim);
}

QubitLabel slot_label(char letter, int slot, int num_qubits) {
  return std::string(1, letter) + std::to_string(num_qubits + 1 - slot);
}

std::vector<QubitLabel> slot_labels(char letter, int num_qubits) {
  std::vector<QubitLabel> labels;
  labels.reserve(num_qubits);
  for (int n = 1; n <= num_qubits; ++n) labels.push_back(slot_label(letter, n, num_qubits));
  return labels;
}

// Picks an index with probability proportional to weights[i].
std::size_t sample_index(std::span<const double> weights, std::mt19937_64& rng) {
  double total = 0.0;
  for (const double w : weights) total += w;
  const double threshold = uniform01(rng) * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = i;
    cumulative += weights[i];
    if (threshold < cumulative) return i;
  }
  return last_positive;
}

struct Measured {
  std::size_t outcome;
  Projection projection;
};

// Projects `targets` onto options[forced] or, without a forced outcome, onto
// an option sampled by the Born rule.
Measured measure(const QuantumState& state, std::span<const QubitLabel> targets,
                 const std::vector<std::span<const Complex>>& options, std::optional<std::size_t> forced,
                 std::mt19937_64& rng) {
  if (forced) {
    Projection p = measure_project(state, targets, options.at(*forced));
    return {*forced, std::move(p)};
  }
  std::vector<Projection> all;
  std::vector<double> weights;
  all.reserve(options.size());
  for (const auto& v : options) {
    all.push_back(measure_project(state, targets, v));
    weights.push_back(all.back().probability);
  }
  const std::size_t k = sample_index(weights, rng);
  return {k, std::move(all[k])};
}

}  // namespace

double wrap_angle(double radians) {
  if (!std::isfinite(radians)) throw std::domain_error("angle is not finite");
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

PhaseVector::PhaseVector(int num_qubits, std::vector<double> delta) : num_qubits_(num_qubits) {
  check_num_qubits(num_qubits);
  if (delta.size() != dim_of(num_qubits)) {
    throw std::domain_error("phase vector for N = " + std::to_string(num_qubits) + " needs " +
                            std::to_string(dim_of(num_qubits)) + " entries, got " +
                            std::to_string(delta.size()));
  }
  delta_ = wrapped(std::move(delta));
}

PhaseVector PhaseVector::random(int num_qubits, std::uint64_t seed) {
  check_num_qubits(num_qubits);
  auto rng = make_rng(seed, kDeltaStream);
  std::vector<double> delta(dim_of(num_qubits), 0.0);
  for (std::size_t j = 1; j < delta.size(); ++j) delta[j] = kTwoPi * uniform01(rng);
  return PhaseVector(num_qubits, std::move(delta));
}

PhaseShare::PhaseShare(int num_qubits, std::vector<double> x, std::string sender_id)
    : num_qubits_(num_qubits), sender_id_(std::move(sender_id)) {
  check_num_qubits(num_qubits);
  if (x.size() != dim_of(num_qubits)) {
    throw std::domain_error("phase share for N = " + std::to_string(num_qubits) + " needs " +
                            std::to_string(dim_of(num_qubits)) + " entries");
  }
  x_ = wrapped(std::move(x));
}

MeasurementBasis::MeasurementBasis(int num_qubits, std::vector<std::vector<Complex>> vectors)
    : num_qubits_(num_qubits), vectors_(std::move(vectors)) {
  check_num_qubits(num_qubits);
  const std::size_t dim = dim_of(num_qubits);
  if (vectors_.size() != dim) throw std::domain_error("basis needs " + std::to_string(dim) + " vectors");
  for (const auto& v : vectors_) {
    if (v.size() != dim) throw std::domain_error("basis vector has wrong dimension");
  }
}

CorrectionOp CorrectionOp::from_factored(std::vector<double> thetas) {
  thetas = wrapped(std::move(thetas));
  std::vector<double> diag(dim_of(static_cast<int>(thetas.size())), 0.0);
  for (std::size_t j = 0; j < diag.size(); ++j) {
    double phase = 0.0;
    for (std::size_t n = 0; n < thetas.size(); ++n) {
      if ((j >> n) & 1U) phase += thetas[n];
    }
    diag[j] = wrap_angle(phase);
  }
  return CorrectionOp(std::move(diag), std::move(thetas));
}

CorrectionOp::CorrectionOp(std::vector<double> diag_phases, std::vector<double> factored)
    : diag_phases_(wrapped(std::move(diag_phases))), factored_(wrapped(std::move(factored))) {
  if (diag_phases_.size() != dim_of(static_cast<int>(factored_.size()))) {
    throw std::domain_error("correction: diagonal length must be 2^(number of factored angles)");
  }
}

CorrectionOp CorrectionOp::compose(const CorrectionOp& other) const {
  if (other.num_qubits() != num_qubits()) throw std::domain_error("correction: qubit counts differ");
  std::vector<double> diag(diag_phases_.size());
  std::vector<double> factored(factored_.size());
  for (std::size_t j = 0; j < diag.size(); ++j) diag[j] = diag_phases_[j] + other.diag_phases_[j];
  for (std::size_t n = 0; n < factored.size(); ++n) factored[n] = factored_[n] + other.factored_[n];
  return CorrectionOp(std::move(diag), std::move(factored));
}

bool CorrectionOp::is_identity(double tol) const {
  return std::all_of(diag_phases_.begin(), diag_phases_.end(), [tol](double phase) {
    return std::min(phase, kTwoPi - phase) <= tol;
  });
}

ComplexMatrix CorrectionOp::matrix() const {
  std::vector<Complex> entries;
  entries.reserve(diag_phases_.size());
  for (const double phase : diag_phases_) entries.push_back(std::polar(1.0, phase));
  return ComplexMatrix::diagonal(entries);
}

ComplexMatrix CorrectionOp::single_qubit_gate(int slot) const {
  const double theta = factored_.at(static_cast<std::size_t>(slot - 1));
  const std::array<Complex, 2> entries{Complex{1.0, 0.0}, std::polar(1.0, theta)};
  return ComplexMatrix::diagonal(entries);
}

ComplexMatrix CorrectionOp::factored_matrix() const {
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (int n = 1; n <= num_qubits(); ++n) m = kron(m, single_qubit_gate(n));
  return m;
}

void ProtocolConfig::validate() const {
  if (num_qubits < 1) throw std::domain_error("N must be at least 1");
  if (num_senders < 1) throw std::domain_error("at least one sender is required");
  const long long total = static_cast<long long>(num_senders + 1 + (controlled ? 1 : 0)) * num_qubits;
  if (total > kMaxQubits) {
    throw ResourceError("configuration needs " + std::to_string(total) + " qubits; limit is " +
                            std::to_string(kMaxQubits),
                        static_cast<std::uint64_t>(total));
  }
}

char party_letter(const ProtocolConfig& config, int party_index) {
  if (party_index < 0 || party_index >= config.parties_per_slot()) {
    throw std::domain_error("party index out of range");
  }
  return static_cast<char>('A' + party_index);
}

std::vector<QubitLabel> sender_labels(const ProtocolConfig& config, int sender) {
  if (sender < 0 || sender >= config.num_senders) throw std::domain_error("sender index out of range");
  return slot_labels(party_letter(config, sender), config.num_qubits);
}

std::vector<QubitLabel> receiver_labels(const ProtocolConfig& config) {
  return slot_labels(party_letter(config, config.num_senders), config.num_qubits);
}

std::vector<QubitLabel> controller_labels(const ProtocolConfig& config) {
  if (!config.controlled) throw UsageError("configuration has no controller");
  return slot_labels(party_letter(config, config.num_senders + 1), config.num_qubits);
}

QuantumState equatorial_state(const PhaseVector& spec, std::vector<QubitLabel> labels) {
  const std::size_t dim = dim_of(spec.num_qubits());
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Complex> amps(dim);
  for (std::size_t j = 0; j < dim; ++j) amps[j] = std::polar(scale, spec[j]);
  if (labels.empty()) labels = default_labels(spec.num_qubits());
  return QuantumState(std::move(amps), std::move(labels));
}

std::vector<PhaseShare> random_phase_split(const PhaseVector& spec, int num_senders, std::uint64_t seed) {
  if (num_senders < 1) throw std::domain_error("at least one sender is required");
  const std::size_t dim = dim_of(spec.num_qubits());
  auto rng = make_rng(seed, kSplitStream);
  std::vector<PhaseShare> shares;
  shares.reserve(num_senders);
  std::vector<double> remainder(spec.delta().begin(), spec.delta().end());
  for (int s = 0; s + 1 < num_senders; ++s) {
    std::vector<double> x(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      x[j] = kTwoPi * uniform01(rng);
      remainder[j] -= x[j];
    }
    shares.emplace_back(spec.num_qubits(), std::move(x), std::string(1, static_cast<char>('A' + s)));
  }
  shares.emplace_back(spec.num_qubits(), std::move(remainder),
                      std::string(1, static_cast<char>('A' + num_senders - 1)));
  return shares;
}

QuantumState ghz_state(int parties, std::vector<QubitLabel> labels) {
  if (parties < 2) throw std::domain_error("GHZ state needs at least 2 parties, got " + std::to_string(parties));
  if (parties > kMaxQubits) throw ResourceError("GHZ state too large", static_cast<std::uint64_t>(parties));
  if (labels.empty()) labels = default_labels(parties);
  if (labels.size() != static_cast<std::size_t>(parties)) {
    throw std::domain_error("GHZ state: label count does not match party count");
  }
  std::vector<Complex> amps(dim_of(parties));
  amps.front() = amps.back() = 1.0 / std::sqrt(2.0);
  return QuantumState(std::move(amps), std::move(labels));
}

QuantumState build_channel(const ProtocolConfig& config) {
  config.validate();
  const int parties = config.parties_per_slot();
  QuantumState channel = basis_state(0, 0);
  for (int n = 1; n <= config.num_qubits; ++n) {
    std::vector<QubitLabel> labels;
    for (int p = 0; p < parties; ++p) labels.push_back(slot_label(party_letter(config, p), n, config.num_qubits));
    channel = tensor(channel, ghz_state(parties, std::move(labels)));
  }
  return channel;
}

MeasurementBasis sender_basis(const PhaseShare& share) {
  const int n = share.num_qubits();
  const std::size_t dim = dim_of(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<std::vector<Complex>> vectors(dim, std::vector<Complex>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t j = 0; j < dim; ++j) {
      vectors[k][j] = std::polar(scale, fourier_angle(static_cast<std::uint64_t>(j * k), n) - share.x()[j]);
    }
  }
  return MeasurementBasis(n, std::move(vectors));
}

CorrectionOp correction(int num_qubits, std::span<const std::uint64_t> outcomes) {
  check_num_qubits(num_qubits);
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  std::uint64_t total = 0;
  for (const auto k : outcomes) {
    if (k >= dim) {
      throw std::domain_error("outcome " + std::to_string(k) + " out of range for N = " + std::to_string(num_qubits));
    }
    total = (total + k) & (dim - 1);
  }
  std::vector<double> diag(dim);
  for (std::uint64_t j = 0; j < dim; ++j) diag[j] = fourier_angle(j * total, num_qubits);
  std::vector<double> thetas(num_qubits);
  for (int n = 1; n <= num_qubits; ++n) thetas[n - 1] = fourier_angle((std::uint64_t{1} << (n - 1)) * total, num_qubits);
  return CorrectionOp(std::move(diag), std::move(thetas));
}

CorrectionOp controller_correction(const ProtocolConfig& config, std::span<const ControllerOutcome> outcomes) {
  if (!config.controlled) throw UsageError("controller correction requested in uncontrolled mode");
  if (outcomes.size() != static_cast<std::size_t>(config.num_qubits)) {
    throw UsageError("expected " + std::to_string(config.num_qubits) + " controller outcomes, got " +
                     std::to_string(outcomes.size()));
  }
  std::vector<double> thetas(outcomes.size(), 0.0);
  for (std::size_t n = 0; n < outcomes.size(); ++n) {
    if (outcomes[n] == ControllerOutcome::kMinus) thetas[n] = kTwoPi / 2.0;
  }
  return CorrectionOp::from_factored(std::move(thetas));
}

PreparedProtocol prepare_protocol(const ProtocolConfig& config, const PhaseVector& spec) {
  config.validate();
  if (spec.num_qubits() != config.num_qubits) {
    throw std::domain_error("phase vector is for N = " + std::to_string(spec.num_qubits()) +
                            " but the configuration has N = " + std::to_string(config.num_qubits));
  }
  auto shares = random_phase_split(spec, config.num_senders, config.seed);
  std::vector<MeasurementBasis> bases;
  std::vector<MeasurementStep> schedule;
  bases.reserve(shares.size());
  for (int s = 0; s < config.num_senders; ++s) {
    bases.push_back(sender_basis(shares[s]));
    MeasurementStep step{sender_labels(config, s), {}};
    for (std::size_t k = 0; k < bases.back().size(); ++k) {
      const auto v = bases.back().vector(k);
      step.options.emplace_back(v.begin(), v.end());
    }
    schedule.push_back(std::move(step));
  }
  if (config.controlled) {
    const double h = 1.0 / std::sqrt(2.0);
    for (auto& label : controller_labels(config)) {
      schedule.push_back(MeasurementStep{{std::move(label)}, {{h, h}, {h, -h}}});
    }
  }
  return PreparedProtocol{config,
                          spec,
                          std::move(shares),
                          std::move(bases),
                          std::move(schedule),
                          build_channel(config),
                          equatorial_state(spec, receiver_labels(config))};
}

BranchOutcomes outcomes_from_steps(const ProtocolConfig& config, std::span<const std::size_t> step_outcomes) {
  const std::size_t senders = static_cast<std::size_t>(config.num_senders);
  BranchOutcomes outcomes;
  for (std::size_t i = 0; i < step_outcomes.size(); ++i) {
    if (i < senders) {
      outcomes.sender.push_back(step_outcomes[i]);
    } else {
      outcomes.controller.push_back(step_outcomes[i] == 0 ? ControllerOutcome::kPlus : ControllerOutcome::kMinus);
    }
  }
  return outcomes;
}

BranchResult finish_branch(const PreparedProtocol& prepared, QuantumState residual, double probability,
                           BranchOutcomes outcomes) {
  const ProtocolConfig& config = prepared.config;
  const auto receiver = receiver_labels(config);
  if (residual.labels() != receiver) throw std::logic_error("residual state is not on the receiver qubits");

  CorrectionOp op = correction(config.num_qubits, outcomes.sender);
  if (config.controlled) op = op.compose(controller_correction(config, outcomes.controller));
  for (int n = 1; n <= config.num_qubits; ++n) {
    const std::array<QubitLabel, 1> target{receiver[n - 1]};
    residual = apply_to_qubits(residual, target, op.single_qubit_gate(n));
  }

  OutcomeRecord record;
  record.outcomes = std::move(outcomes);
  record.branch_probability = probability;
  record.fidelity = fidelity_global_phase(residual, prepared.target);
  record.correction_angles.assign(op.factored().begin(), op.factored().end());
  return BranchResult{std::move(record), std::move(residual)};
}

BranchResult run_branch(const PreparedProtocol& prepared, const std::optional<BranchOutcomes>& forced,
                        std::uint64_t sample_seed) {
  const ProtocolConfig& config = prepared.config;
  std::vector<std::size_t> wanted;
  if (forced) {
    if (forced->sender.size() != static_cast<std::size_t>(config.num_senders)) {
      throw UsageError("expected " + std::to_string(config.num_senders) + " sender outcomes, got " +
                       std::to_string(forced->sender.size()));
    }
    const std::size_t want_controller = config.controlled ? static_cast<std::size_t>(config.num_qubits) : 0;
    if (forced->controller.size() != want_controller) {
      throw UsageError("expected " + std::to_string(want_controller) + " controller outcomes, got " +
                       std::to_string(forced->controller.size()));
    }
    for (const auto k : forced->sender) {
      if (k >= dim_of(config.num_qubits)) throw std::domain_error("sender outcome " + std::to_string(k) + " out of range");
      wanted.push_back(static_cast<std::size_t>(k));
    }
    for (const auto c : forced->controller) wanted.push_back(c == ControllerOutcome::kPlus ? 0 : 1);
  }

  auto rng = make_rng(sample_seed, kSampleStream);
  QuantumState state = prepared.channel;
  double probability = 1.0;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < prepared.schedule.size(); ++i) {
    const MeasurementStep& step = prepared.schedule[i];
    std::vector<std::span<const Complex>> options(step.options.begin(), step.options.end());
    std::optional<std::size_t> want;
    if (forced) want = wanted[i];
    Measured m = measure(state, step.targets, options, want, rng);
    if (!m.projection.reachable()) {
      throw UnreachableBranchError("outcome " + std::to_string(m.outcome) + " on " + step.targets.front() +
                                   " has zero probability");
    }
    probability *= m.projection.probability;
    state = std::move(*m.projection.post_state);
    chosen.push_back(m.outcome);
  }
  return finish_branch(prepared, std::move(state), probability, outcomes_from_steps(config, chosen));
}

OutcomeRecord run_once(const ProtocolConfig& config, const PhaseVector& spec,
                       const std::optional<BranchOutcomes>& forced, std::uint64_t seed) {
  return run_branch(prepare_protocol(config, spec), forced, seed).record;
}

}  // namespace jrsp
