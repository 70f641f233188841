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

#include <cmath>
#include <stdexcept>

#include "gtest/gtest.h"
#include "jrsp/errors.h"
#include "test_util.h"
#include "two_qubit_reference.h"

using namespace jrsp;
using namespace jrsp::testing;

namespace {

MeasurementBasis golden_two_qubit_basis(const std::vector<double>& x) {
  std::vector<std::vector<Complex>> vectors(4, std::vector<Complex>(4));
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t j = 0; j < 4; ++j) vectors[k][j] = 0.5 * kSenderBasisSigns[k][j] * std::exp(-kI * x[j]);
  }
  return MeasurementBasis(2, std::move(vectors));
}

std::vector<double> random_share(int n, std::mt19937_64& rng) { return random_angles(std::size_t{1} << n, rng); }

}  // namespace

TEST(CheckOrthonormal, GoldenBasisForAnyPhases) {
  auto rng = test_rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = random_share(2, rng);
    x[0] = 0.0;
    const auto report = check_orthonormal(golden_two_qubit_basis(x));
    EXPECT_LT(report.max_deviation, 1e-12);
    EXPECT_TRUE(report.passed);
  }
}

TEST(CheckOrthonormal, DuplicatedVectorFails) {
  const double h = 1.0 / std::sqrt(2.0);
  const MeasurementBasis dup(1, {{h, h}, {h, h}});
  const auto report = check_orthonormal(dup);
  EXPECT_NEAR(report.max_deviation, 1.0, 1e-15);
  EXPECT_FALSE(report.passed);
}

TEST(CheckOrthonormal, ThreeQubitSenderBasis) {
  auto rng = test_rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    EXPECT_LT(check_orthonormal(sender_basis(PhaseShare(3, random_share(3, rng), "A"))).max_deviation, 1e-10);
  }
}

// The two-qubit channel amplitudes obtained through measure_project agree with
// the hand-transcribed decomposition table for every outcome pair.
TEST(Decomposition, ProjectionsMatchTranscribedTable) {
  auto rng = test_rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = random_share(2, rng);
    auto b = random_share(2, rng);
    if (trial == 0) a = b = {0.0, 0.0, 0.0, 0.0};
    a[0] = b[0] = 0.0;
    const ProtocolConfig config{2, 2, false, 0};
    const QuantumState channel = build_channel(config);
    const auto basis_a = sender_basis(PhaseShare(2, a, "A"));
    const auto basis_b = sender_basis(PhaseShare(2, b, "B"));
    for (std::size_t ka = 0; ka < 4; ++ka) {
      for (std::size_t kb = 0; kb < 4; ++kb) {
        const auto pa = measure_project(channel, sender_labels(config, 0), basis_a.vector(ka));
        const auto pb = measure_project(*pa.post_state, sender_labels(config, 1), basis_b.vector(kb));
        const double weight = std::sqrt(pa.probability * pb.probability);
        ASSERT_EQ(pb.post_state->labels(), receiver_labels(config));
        for (std::size_t j = 0; j < 4; ++j) {
          const Complex expected = 0.125 * kResidualSigns[ka][kb][j] * std::exp(kI * (a[j] + b[j]));
          EXPECT_LT(std::abs(weight * pb.post_state->amplitude(j) - expected), 1e-12)
              << "kA=" << ka << " kB=" << kb << " j=" << j;
        }
      }
    }
  }
}

TEST(Decomposition, ClosedFormMatchesTableAtZeroPhase) {
  // Independent evaluation of the closed form at N = 2, delta = 0 against the
  // (phi_0, phi_0) row and every other row of the table.
  for (std::size_t ka = 0; ka < 4; ++ka) {
    for (std::size_t kb = 0; kb < 4; ++kb) {
      for (std::size_t j = 0; j < 4; ++j) {
        const Complex closed = 0.125 * std::exp(-kI * (2.0 * kPi * static_cast<double>(j * (ka + kb)) / 4.0));
        EXPECT_LT(std::abs(closed - 0.125 * kResidualSigns[ka][kb][j]), 1e-15);
      }
    }
  }
  const std::vector<PhaseShare> zero{PhaseShare(2, {0, 0, 0, 0}, "A"), PhaseShare(2, {0, 0, 0, 0}, "B")};
  EXPECT_LT(decomposition_check(2, zero), 1e-12);
}

TEST(Decomposition, SingleQubitAmplitudeModulus) {
  // N = 1, delta = 0: every amplitude <phi_kA, phi_kB, j | Psi> has modulus
  // 1 / (2 sqrt 2). Direct evaluation from the GHZ triple.
  const double h = 1.0 / std::sqrt(2.0);
  for (int ka = 0; ka < 2; ++ka) {
    for (int kb = 0; kb < 2; ++kb) {
      for (int j = 0; j < 2; ++j) {
        // Only |jjj> contributes: (1/sqrt2) * conj(phi_ka[j]) * conj(phi_kb[j]).
        const double sa = (ka == 1 && j == 1) ? -1.0 : 1.0;
        const double sb = (kb == 1 && j == 1) ? -1.0 : 1.0;
        EXPECT_NEAR(std::abs(h * (h * sa) * (h * sb)), 1.0 / (2.0 * std::sqrt(2.0)), 1e-15);
      }
    }
  }
  const std::vector<PhaseShare> zero{PhaseShare(1, {0, 0}, "A"), PhaseShare(1, {0, 0}, "B")};
  EXPECT_LT(decomposition_check(1, zero), 1e-15);
}

TEST(Decomposition, RandomSharesUpToThreeQubits) {
  auto rng = test_rng(33);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<PhaseShare> shares{PhaseShare(n, random_share(n, rng), "A"),
                                           PhaseShare(n, random_share(n, rng), "B")};
      EXPECT_LT(decomposition_check(n, shares), 1e-10) << "N=" << n;
    }
  }
}

TEST(Decomposition, RequiresTwoShares) {
  const std::vector<PhaseShare> three(3, PhaseShare(1, {0, 0}, "A"));
  EXPECT_THROW(decomposition_check(1, three), UsageError);
  const std::vector<PhaseShare> one(1, PhaseShare(1, {0, 0}, "A"));
  EXPECT_THROW(decomposition_check(1, one), UsageError);
}

TEST(BranchEnumeration, CountAndOrder) {
  EXPECT_EQ(branch_count({2, 2, false, 0}), 16U);
  EXPECT_EQ(branch_count({2, 3, false, 0}), 64U);
  EXPECT_EQ(branch_count({2, 2, true, 0}), 64U);
  EXPECT_EQ(branch_count({1, 1, false, 0}), 2U);

  const ProtocolConfig config{2, 2, true, 0};
  EXPECT_EQ(branch_at(config, 0), (BranchOutcomes{{0, 0}, {ControllerOutcome::kPlus, ControllerOutcome::kPlus}}));
  EXPECT_EQ(branch_at(config, 1), (BranchOutcomes{{0, 0}, {ControllerOutcome::kPlus, ControllerOutcome::kMinus}}));
  EXPECT_EQ(branch_at(config, 4), (BranchOutcomes{{0, 1}, {ControllerOutcome::kPlus, ControllerOutcome::kPlus}}));
  EXPECT_EQ(branch_at(config, 63), (BranchOutcomes{{3, 3}, {ControllerOutcome::kMinus, ControllerOutcome::kMinus}}));
  EXPECT_THROW(branch_at(config, 64), std::domain_error);
}

TEST(ExhaustiveVerify, TwoQubitsTwoSenders) {
  const ProtocolConfig config{2, 2, false, 17};
  const auto report = exhaustive_verify(config, PhaseVector::random(2, 17));
  ASSERT_EQ(report.branches.size(), 16U);
  for (const auto& b : report.branches) EXPECT_NEAR(b.branch_probability, 1.0 / 16.0, 1e-12);
  EXPECT_GE(report.min_fidelity, 1.0 - 1e-10);
  EXPECT_NEAR(report.success_probability, 1.0, 1e-9);
  EXPECT_NEAR(report.total_probability, 1.0, 1e-9);
  EXPECT_TRUE(report.succeeded());
  EXPECT_EQ(report.branches[6].outcomes, branch_at(config, 6));
}

TEST(ExhaustiveVerify, SingleQubitSingleSender) {
  const auto report = exhaustive_verify({1, 1, false, 0}, PhaseVector(1, {0.0, 0.0}));
  ASSERT_EQ(report.branches.size(), 2U);
  for (const auto& b : report.branches) {
    EXPECT_NEAR(b.branch_probability, 0.5, 1e-15);
    EXPECT_NEAR(b.fidelity, 1.0, 1e-15);
  }
}

TEST(ExhaustiveVerify, ThreeSenders) {
  const auto report = exhaustive_verify({2, 3, false, 4}, PhaseVector::random(2, 4));
  EXPECT_EQ(report.branches.size(), 64U);
  EXPECT_NEAR(report.success_probability, 1.0, 1e-9);
  EXPECT_GE(report.min_fidelity, 1.0 - 1e-10);
}

TEST(ExhaustiveVerify, ControlledUniformity) {
  for (int n = 1; n <= 2; ++n) {
    const ProtocolConfig config{n, 2, true, 8};
    const auto report = exhaustive_verify(config, PhaseVector::random(n, 8));
    const double expected = std::pow(0.25, n) * std::pow(0.5, n);
    for (const auto& b : report.branches) EXPECT_NEAR(b.branch_probability, expected, 1e-12);
    EXPECT_TRUE(report.succeeded());
  }
}

TEST(ExhaustiveVerify, TotalProbabilityAcrossConfigs) {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      for (const bool controlled : {false, true}) {
        const ProtocolConfig config{n, m, controlled, static_cast<std::uint64_t>(n * 7 + m)};
        const auto report = exhaustive_verify(config, PhaseVector::random(n, config.seed));
        EXPECT_NEAR(report.total_probability, 1.0, 1e-9);
        EXPECT_NEAR(report.success_probability, 1.0, 1e-9);
      }
    }
  }
}

TEST(ExhaustiveVerify, SeedDoesNotChangeSuccess) {
  const auto delta = PhaseVector::random(3, 99);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto report = exhaustive_verify({3, 2, false, seed}, delta);
    EXPECT_NEAR(report.success_probability, 1.0, 1e-9);
  }
}

TEST(ExhaustiveVerify, BitStableAcrossRunsAndThreadCounts) {
  const ProtocolConfig config{2, 2, true, 21};
  const auto delta = PhaseVector::random(2, 21);
  VerifyOptions serial;
  serial.threads = 1;
  VerifyOptions parallel;
  parallel.threads = 4;
  const auto a = exhaustive_verify(config, delta, serial);
  const auto b = exhaustive_verify(config, delta, parallel);
  const auto c = exhaustive_verify(config, delta, parallel);
  EXPECT_EQ(a.branches, b.branches);
  EXPECT_EQ(b.branches, c.branches);
  EXPECT_EQ(a.total_probability, b.total_probability);
  EXPECT_EQ(a.min_fidelity, c.min_fidelity);
}

TEST(ExhaustiveVerify, MatchesIndependentRunBranchExactly) {
  for (const bool controlled : {false, true}) {
    for (int n = 1; n <= 3; ++n) {
      const ProtocolConfig config{n, 2, controlled, static_cast<std::uint64_t>(30 + n)};
      const auto delta = PhaseVector::random(n, config.seed);
      const auto prepared = prepare_protocol(config, delta);
      const auto report = exhaustive_verify(config, delta);
      ASSERT_EQ(report.branches.size(), branch_count(config));
      for (std::uint64_t i = 0; i < branch_count(config); ++i) {
        const auto outcomes = branch_at(config, i);
        EXPECT_EQ(report.branches[i], run_branch(prepared, outcomes, 0).record) << "branch " << i;
      }
    }
  }
}

TEST(ExhaustiveVerify, BranchCap) {
  VerifyOptions options;
  options.branch_cap = 15;
  try {
    exhaustive_verify({2, 2, false, 0}, PhaseVector::random(2, 0), options);
    FAIL() << "expected ResourceError";
  } catch (const ResourceError& e) {
    EXPECT_EQ(e.requested(), 16U);
  }
  options.branch_cap = 16;
  EXPECT_NO_THROW(exhaustive_verify({2, 2, false, 0}, PhaseVector::random(2, 0), options));
}

TEST(ExhaustiveVerify, ToleranceControlsSuccess) {
  VerifyOptions options;
  options.tolerance = -1.0;  // nothing can reach fidelity >= 2
  const auto report = exhaustive_verify({1, 2, false, 0}, PhaseVector::random(1, 0), options);
  EXPECT_EQ(report.success_probability, 0.0);
  EXPECT_FALSE(report.succeeded());
}

TEST(SlicedOracle, AgreesWithProjectionPath) {
  for (const bool controlled : {false, true}) {
    const ProtocolConfig config{2, 2, controlled, 13};
    const auto prepared = prepare_protocol(config, PhaseVector::random(2, 13));
    for (std::uint64_t i = 0; i < branch_count(config); ++i) {
      const auto outcomes = branch_at(config, i);
      const auto primary = run_branch(prepared, outcomes, 0);
      const auto sliced = sliced_receiver_state(prepared, outcomes);
      EXPECT_NEAR(fidelity_global_phase(sliced, prepared.target), primary.record.fidelity, 1e-10);
      EXPECT_NEAR(fidelity_global_phase(sliced, primary.receiver_state), 1.0, 1e-10);
    }
  }
}

TEST(SlicedOracle, ReportsCrossCheckError) {
  VerifyOptions options;
  options.cross_check = true;
  const auto report = exhaustive_verify({3, 2, false, 2}, PhaseVector::random(3, 2), options);
  ASSERT_TRUE(report.max_cross_check_error.has_value());
  EXPECT_LT(*report.max_cross_check_error, 1e-10);
}
