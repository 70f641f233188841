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

// Shared helpers for the unit tests: random generators and comparisons.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gtest/gtest.h"
#include "jrsp/statevec.h"

namespace jrsp::testing {

inline constexpr double kPi = 3.14159265358979323846;

inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed * 0x9E3779B97F4A7C15ULL + 1); }

inline std::vector<double> random_angles(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 2.0 * kPi);
  std::vector<double> out(count);
  for (auto& a : out) a = dist(rng);
  return out;
}

inline QuantumState random_state(int num_qubits, std::mt19937_64& rng, std::vector<QubitLabel> labels = {}) {
  std::normal_distribution<double> dist;
  std::vector<Complex> amps(std::size_t{1} << num_qubits);
  double norm = 0.0;
  for (auto& a : amps) {
    a = {dist(rng), dist(rng)};
    norm += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm);
  if (labels.empty()) labels = default_labels(num_qubits);
  return QuantumState(std::move(amps), std::move(labels));
}

// Haar-ish random unitary via Gram-Schmidt on a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> dist;
  std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
  for (std::size_t c = 0; c < dim; ++c) {
    for (auto& v : cols[c]) v = {dist(rng), dist(rng)};
    for (std::size_t p = 0; p < c; ++p) {
      Complex dot{};
      for (std::size_t i = 0; i < dim; ++i) dot += std::conj(cols[p][i]) * cols[c][i];
      for (std::size_t i = 0; i < dim; ++i) cols[c][i] -= dot * cols[p][i];
    }
    double norm = 0.0;
    for (const auto& v : cols[c]) norm += std::norm(v);
    for (auto& v : cols[c]) v /= std::sqrt(norm);
  }
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = cols[c][r];
  }
  return m;
}

inline double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  EXPECT_EQ(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Circular distance between two angles.
inline double angle_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return std::min(d, 2.0 * kPi - d);
}

}  // namespace jrsp::testing
