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

// Machine-readable report documents (schema_version "1").
//
// Angles (delta, correction_angles) are written as JSON strings holding a
// decimal with 17 significant digits so that they parse back to the same
// double. Probabilities and fidelities are plain JSON numbers.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jrsp/protocol.h"
#include "jrsp/verify.h"

namespace jrsp {

inline constexpr std::string_view kSchemaVersion = "1";

struct ReportSummary {
  double min_fidelity = 0.0;
  double success_probability = 0.0;
  double total_probability = 0.0;
  double elapsed_seconds = 0.0;

  bool operator==(const ReportSummary&) const = default;
};

struct ReportDocument {
  std::string schema_version{kSchemaVersion};
  ProtocolConfig config;
  double tolerance = kDefaultSuccessTolerance;
  std::uint64_t branch_cap = kDefaultBranchCap;
  PhaseVector delta;
  std::vector<OutcomeRecord> branches;
  ReportSummary summary;
  std::optional<double> max_cross_check_error;

  bool operator==(const ReportDocument&) const = default;
};

ReportDocument make_report(const VerificationReport& report, std::uint64_t branch_cap, double elapsed_seconds);

std::string serialize_report(const ReportDocument& doc);
// Throws std::invalid_argument on malformed input.
ReportDocument parse_report(std::string_view text);

// Output of a single protocol execution.
struct RunDocument {
  std::string schema_version{kSchemaVersion};
  ProtocolConfig config;
  double tolerance = kDefaultSuccessTolerance;
  PhaseVector delta;
  OutcomeRecord record;

  bool operator==(const RunDocument&) const = default;
};

std::string serialize_run(const RunDocument& doc);
RunDocument parse_run(std::string_view text);

// One row of a parameter sweep.
struct SweepRow {
  int num_qubits = 0;
  int num_senders = 0;
  bool controlled = false;
  std::uint64_t seed = 0;
  std::uint64_t branches = 0;
  double min_fidelity = 0.0;
  double success_probability = 0.0;
  double total_probability = 0.0;
  bool succeeded = false;
};

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string sweep_json(const std::vector<SweepRow>& rows);

// Per-branch CSV for a verification report.
std::string report_csv(const ReportDocument& doc);
std::string run_csv(const RunDocument& doc);

std::string format_angle(double radians);

}  // namespace jrsp
