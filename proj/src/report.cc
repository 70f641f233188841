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

#include "jrsp/report.h"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace jrsp {
namespace {

using nlohmann::json;

double parse_angle(const json& j) {
  const auto& text = j.get_ref<const std::string&>();
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("malformed angle '" + text + "'");
  return value;
}

json angles_to_json(std::span<const double> angles) {
  json out = json::array();
  for (const double a : angles) out.push_back(format_angle(a));
  return out;
}

std::vector<double> angles_from_json(const json& j) {
  std::vector<double> out;
  for (const auto& a : j) out.push_back(parse_angle(a));
  return out;
}

json config_to_json(const ProtocolConfig& config) {
  return json{{"n", config.num_qubits},
              {"senders", config.num_senders},
              {"controlled", config.controlled},
              {"seed", config.seed}};
}

ProtocolConfig config_from_json(const json& j) {
  return ProtocolConfig{j.at("n").get<int>(), j.at("senders").get<int>(), j.at("controlled").get<bool>(),
                        j.at("seed").get<std::uint64_t>()};
}

json delta_to_json(const PhaseVector& delta) { return angles_to_json(delta.delta()); }

PhaseVector delta_from_json(int num_qubits, const json& j) { return PhaseVector(num_qubits, angles_from_json(j)); }

json record_to_json(const OutcomeRecord& r) {
  json controller = json::array();
  for (const auto c : r.outcomes.controller) controller.push_back(c == ControllerOutcome::kPlus ? "+" : "-");
  return json{{"outcomes", {{"senders", r.outcomes.sender}, {"controller", controller}}},
              {"branch_probability", r.branch_probability},
              {"fidelity", r.fidelity},
              {"correction_angles", angles_to_json(r.correction_angles)}};
}

OutcomeRecord record_from_json(const json& j) {
  OutcomeRecord r;
  const auto& outcomes = j.at("outcomes");
  r.outcomes.sender = outcomes.at("senders").get<std::vector<std::uint64_t>>();
  for (const auto& c : outcomes.at("controller")) {
    const auto& s = c.get_ref<const std::string&>();
    if (s == "+") {
      r.outcomes.controller.push_back(ControllerOutcome::kPlus);
    } else if (s == "-") {
      r.outcomes.controller.push_back(ControllerOutcome::kMinus);
    } else {
      throw std::invalid_argument("controller outcome must be '+' or '-', got '" + s + "'");
    }
  }
  r.branch_probability = j.at("branch_probability").get<double>();
  r.fidelity = j.at("fidelity").get<double>();
  r.correction_angles = angles_from_json(j.at("correction_angles"));
  return r;
}

json parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("report is not valid JSON: ") + e.what());
  }
  if (j.value("schema_version", "") != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema_version");
  }
  return j;
}

std::string number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

// Turns nlohmann type errors into the single error type callers expect.
template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed report: ") + e.what());
  }
}

}  // namespace

std::string format_angle(double radians) { return number(radians); }

ReportDocument make_report(const VerificationReport& report, std::uint64_t branch_cap, double elapsed_seconds) {
  return ReportDocument{std::string(kSchemaVersion),
                        report.config,
                        report.tolerance,
                        branch_cap,
                        report.spec,
                        report.branches,
                        ReportSummary{report.min_fidelity, report.success_probability, report.total_probability,
                                      elapsed_seconds},
                        report.max_cross_check_error};
}

std::string serialize_report(const ReportDocument& doc) {
  json branches = json::array();
  for (const auto& r : doc.branches) branches.push_back(record_to_json(r));
  json j{{"schema_version", doc.schema_version},
         {"config", config_to_json(doc.config)},
         {"tolerance", doc.tolerance},
         {"branch_cap", doc.branch_cap},
         {"delta", delta_to_json(doc.delta)},
         {"branches", std::move(branches)},
         {"summary",
          {{"min_fidelity", doc.summary.min_fidelity},
           {"success_probability", doc.summary.success_probability},
           {"total_probability", doc.summary.total_probability},
           {"elapsed_seconds", doc.summary.elapsed_seconds}}}};
  if (doc.max_cross_check_error) j["max_cross_check_error"] = *doc.max_cross_check_error;
  return j.dump(2) + "\n";
}

ReportDocument parse_report(std::string_view text) {
  const json j = parse_document(text);
  return guarded([&] {
    const ProtocolConfig config = config_from_json(j.at("config"));
    std::vector<OutcomeRecord> branches;
    for (const auto& b : j.at("branches")) branches.push_back(record_from_json(b));
    const auto& s = j.at("summary");
    std::optional<double> cross;
    if (j.contains("max_cross_check_error")) cross = j.at("max_cross_check_error").get<double>();
    return ReportDocument{j.at("schema_version").get<std::string>(),
                          config,
                          j.at("tolerance").get<double>(),
                          j.at("branch_cap").get<std::uint64_t>(),
                          delta_from_json(config.num_qubits, j.at("delta")),
                          std::move(branches),
                          ReportSummary{s.at("min_fidelity").get<double>(), s.at("success_probability").get<double>(),
                                        s.at("total_probability").get<double>(),
                                        s.at("elapsed_seconds").get<double>()},
                          cross};
  });
}

std::string serialize_run(const RunDocument& doc) {
  json j{{"schema_version", doc.schema_version},
         {"config", config_to_json(doc.config)},
         {"tolerance", doc.tolerance},
         {"delta", delta_to_json(doc.delta)},
         {"record", record_to_json(doc.record)}};
  return j.dump(2) + "\n";
}

RunDocument parse_run(std::string_view text) {
  const json j = parse_document(text);
  return guarded([&] {
    const ProtocolConfig config = config_from_json(j.at("config"));
    return RunDocument{j.at("schema_version").get<std::string>(), config, j.at("tolerance").get<double>(),
                       delta_from_json(config.num_qubits, j.at("delta")), record_from_json(j.at("record"))};
  });
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "n,senders,controlled,seed,branches,min_fidelity,success_probability,total_probability,succeeded\n";
  for (const auto& r : rows) {
    out << r.num_qubits << ',' << r.num_senders << ',' << (r.controlled ? 1 : 0) << ',' << r.seed << ','
        << r.branches << ',' << number(r.min_fidelity) << ',' << number(r.success_probability) << ','
        << number(r.total_probability) << ',' << (r.succeeded ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.num_qubits},
                   {"senders", r.num_senders},
                   {"controlled", r.controlled},
                   {"seed", r.seed},
                   {"branches", r.branches},
                   {"min_fidelity", r.min_fidelity},
                   {"success_probability", r.success_probability},
                   {"total_probability", r.total_probability},
                   {"succeeded", r.succeeded}});
  }
  return json{{"schema_version", kSchemaVersion}, {"rows", std::move(out)}}.dump(2) + "\n";
}

namespace {

void write_record_csv(std::ostream& out, std::size_t index, const OutcomeRecord& r) {
  out << index << ',';
  for (std::size_t s = 0; s < r.outcomes.sender.size(); ++s) out << (s ? " " : "") << r.outcomes.sender[s];
  out << ',';
  for (const auto c : r.outcomes.controller) out << (c == ControllerOutcome::kPlus ? '+' : '-');
  out << ',' << number(r.branch_probability) << ',' << number(r.fidelity) << ',';
  for (std::size_t n = 0; n < r.correction_angles.size(); ++n) {
    out << (n ? " " : "") << format_angle(r.correction_angles[n]);
  }
  out << '\n';
}

constexpr const char* kRecordHeader = "branch,sender_outcomes,controller_outcomes,branch_probability,fidelity,correction_angles\n";

}  // namespace

std::string report_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << kRecordHeader;
  for (std::size_t i = 0; i < doc.branches.size(); ++i) write_record_csv(out, i, doc.branches[i]);
  return out.str();
}

std::string run_csv(const RunDocument& doc) {
  std::ostringstream out;
  out << kRecordHeader;
  write_record_csv(out, 0, doc.record);
  return out.str();
}

}  // namespace jrsp
