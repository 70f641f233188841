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

#include "jrsp/cli.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "jrsp/errors.h"
#include "jrsp/protocol.h"
#include "jrsp/report.h"
#include "jrsp/verify.h"

namespace jrsp::cli {
namespace {

struct Flags {
  std::string n = "2";
  std::string senders = "2";
  bool controlled = false;
  std::string delta;
  std::uint64_t seed = 0;
  std::string force_outcomes;
  double tol = kDefaultSuccessTolerance;
  std::string out_path;
  std::string format;
  int trials = 1;
  std::uint64_t branch_cap = kDefaultBranchCap;
  bool cross_check = false;
  bool timing = false;
};

std::vector<std::string_view> split_csv(std::string_view csv) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    std::string_view part = csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    parts.push_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

int single_int(std::string_view text, std::string_view flag) {
  const IntRange r = parse_range(text);
  if (r.first != r.last) throw UsageError(std::string(flag) + " takes a single value here, got '" + std::string(text) + "'");
  return r.first;
}

std::uint64_t effective_branch_cap(const Flags& flags, bool cap_given) {
  if (cap_given) return flags.branch_cap;
  if (const char* env = std::getenv("JRSP_BRANCH_CAP"); env != nullptr && *env != '\0') {
    return parse_number<std::uint64_t>(env, "JRSP_BRANCH_CAP");
  }
  return flags.branch_cap;
}

// Writes to --out when given, else to `out`.
void emit(const Flags& flags, std::ostream& out, const std::string& text) {
  if (flags.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(flags.out_path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + flags.out_path + "' for writing");
  file << text;
}

std::string format_or(const Flags& flags, const std::string& fallback) {
  return flags.format.empty() ? fallback : flags.format;
}

PhaseVector delta_for(const Flags& flags, int num_qubits, std::uint64_t seed) {
  if (flags.delta.empty()) return PhaseVector::random(num_qubits, seed);
  return PhaseVector(num_qubits, parse_real_list(flags.delta));
}

int cmd_verify(const Flags& flags, bool cap_given, std::ostream& out) {
  ProtocolConfig config{single_int(flags.n, "--n"), single_int(flags.senders, "--senders"), flags.controlled, flags.seed};
  config.validate();
  const PhaseVector spec = delta_for(flags, config.num_qubits, flags.seed);
  const VerifyOptions options{flags.tol, effective_branch_cap(flags, cap_given), flags.cross_check, 0};

  const auto start = std::chrono::steady_clock::now();
  const VerificationReport report = exhaustive_verify(config, spec, options);
  const double elapsed =
      flags.timing ? std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() : 0.0;

  const ReportDocument doc = make_report(report, options.branch_cap, elapsed);
  emit(flags, out, format_or(flags, "json") == "csv" ? report_csv(doc) : serialize_report(doc));
  return report.succeeded() ? kSuccess : kVerificationFailed;
}

int cmd_run(const Flags& flags, std::ostream& out) {
  ProtocolConfig config{single_int(flags.n, "--n"), single_int(flags.senders, "--senders"), flags.controlled, flags.seed};
  config.validate();
  const PhaseVector spec = delta_for(flags, config.num_qubits, flags.seed);

  std::optional<BranchOutcomes> forced;
  if (!flags.force_outcomes.empty()) {
    const auto values = parse_uint_list(flags.force_outcomes);
    const std::size_t want = config.num_senders + (config.controlled ? config.num_qubits : 0);
    if (values.size() != want) {
      throw UsageError("--force-outcomes needs " + std::to_string(want) + " values (one k per sender" +
                       (config.controlled ? ", then one 0/1 per controller qubit)" : ")") + ", got " +
                       std::to_string(values.size()));
    }
    BranchOutcomes b;
    b.sender.assign(values.begin(), values.begin() + config.num_senders);
    for (std::size_t i = config.num_senders; i < values.size(); ++i) {
      if (values[i] > 1) throw UsageError("controller outcomes are 0 (+) or 1 (-)");
      b.controller.push_back(values[i] == 0 ? ControllerOutcome::kPlus : ControllerOutcome::kMinus);
    }
    forced = std::move(b);
  }

  const OutcomeRecord record = run_once(config, spec, forced, flags.seed);
  const RunDocument doc{std::string(kSchemaVersion), config, flags.tol, spec, record};
  emit(flags, out, format_or(flags, "json") == "csv" ? run_csv(doc) : serialize_run(doc));
  return record.fidelity >= 1.0 - flags.tol ? kSuccess : kVerificationFailed;
}

int cmd_sweep(const Flags& flags, bool cap_given, std::ostream& out) {
  if (!flags.delta.empty()) throw UsageError("--delta is not accepted by sweep; phases are drawn per cell");
  if (flags.trials < 1) throw UsageError("--trials must be at least 1");
  const IntRange ns = parse_range(flags.n);
  const IntRange ms = parse_range(flags.senders);
  const VerifyOptions options{flags.tol, effective_branch_cap(flags, cap_given), flags.cross_check, 0};

  std::vector<SweepRow> rows;
  bool all_ok = true;
  for (int n = ns.first; n <= ns.last; ++n) {
    for (int m = ms.first; m <= ms.last; ++m) {
      for (int t = 0; t < flags.trials; ++t) {
        const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(t);
        const ProtocolConfig config{n, m, flags.controlled, seed};
        const VerificationReport report = exhaustive_verify(config, PhaseVector::random(n, seed), options);
        rows.push_back(SweepRow{n, m, flags.controlled, seed, report.branches.size(), report.min_fidelity,
                                report.success_probability, report.total_probability, report.succeeded()});
        all_ok = all_ok && report.succeeded();
      }
    }
  }
  emit(flags, out, format_or(flags, "csv") == "json" ? sweep_json(rows) : sweep_csv(rows));
  return all_ok ? kSuccess : kVerificationFailed;
}

void add_common(CLI::App* cmd, Flags& flags) {
  cmd->add_option("--n", flags.n, "Qubits in the target state");
  cmd->add_option("--senders", flags.senders, "Number of senders");
  cmd->add_flag("--controlled", flags.controlled, "Add a controller party");
  cmd->add_option("--delta", flags.delta, "Comma-separated target phases in radians (default: seeded random)");
  cmd->add_option("--seed", flags.seed, "Seed for phases, phase splitting and sampling");
  cmd->add_option("--tol", flags.tol, "Fidelity tolerance for success")->check(CLI::PositiveNumber);
  cmd->add_option("--out", flags.out_path, "Write the report here instead of stdout");
  cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--cross-check", flags.cross_check, "Recompute every branch by direct amplitude slicing");
  cmd->add_flag("--timing", flags.timing, "Record elapsed_seconds (makes output time-dependent)");
}

}  // namespace

IntRange parse_range(std::string_view text) {
  const std::size_t dots = text.find("..");
  IntRange r;
  if (dots == std::string_view::npos) {
    r.first = r.last = parse_number<int>(text, "integer");
  } else {
    r.first = parse_number<int>(text.substr(0, dots), "range start");
    r.last = parse_number<int>(text.substr(dots + 2), "range end");
  }
  if (r.first < 1 || r.last < r.first) throw UsageError("invalid range '" + std::string(text) + "'");
  return r;
}

std::vector<double> parse_real_list(std::string_view csv) {
  std::vector<double> values;
  for (const auto part : split_csv(csv)) {
    // from_chars for double is unavailable on older toolchains.
    const std::string s(part);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = std::string::npos;
    }
    if (s.empty() || used != s.size()) throw UsageError("invalid number '" + s + "'");
    values.push_back(v);
  }
  return values;
}

std::vector<std::uint64_t> parse_uint_list(std::string_view csv) {
  std::vector<std::uint64_t> values;
  for (const auto part : split_csv(csv)) values.push_back(parse_number<std::uint64_t>(part, "outcome"));
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Joint remote state preparation of equatorial states: simulate and verify", "jrsp"};
  app.require_subcommand(1);
  Flags flags;

  auto* verify = app.add_subcommand("verify", "Enumerate every measurement branch and check the prepared state");
  add_common(verify, flags);
  auto* cap_verify = verify->add_option("--branch-cap", flags.branch_cap, "Maximum branches to enumerate");

  auto* run_cmd = app.add_subcommand("run", "Execute the protocol once");
  add_common(run_cmd, flags);
  run_cmd->add_option("--force-outcomes", flags.force_outcomes,
                      "Comma-separated k per sender, then 0/1 per controller qubit");

  auto* sweep = app.add_subcommand("sweep", "Verify over a grid of N and sender counts");
  add_common(sweep, flags);
  sweep->add_option("--trials", flags.trials, "Seeds per grid cell");
  auto* cap_sweep = sweep->add_option("--branch-cap", flags.branch_cap, "Maximum branches per cell");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (verify->parsed()) return cmd_verify(flags, cap_verify->count() > 0, out);
    if (run_cmd->parsed()) return cmd_run(flags, out);
    return cmd_sweep(flags, cap_sweep->count() > 0, out);
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kResourceCap;
  } catch (const UnreachableBranchError& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const std::logic_error& e) {
    // UsageError, std::domain_error and std::invalid_argument all land here.
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace jrsp::cli
