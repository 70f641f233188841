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
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace jrsp::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kResourceCap = 3,
};

struct IntRange {
  int first = 1;
  int last = 1;
};

// "3" or "1..4". Throws UsageError.
IntRange parse_range(std::string_view text);
std::vector<double> parse_real_list(std::string_view csv);
std::vector<std::uint64_t> parse_uint_list(std::string_view csv);

// Entry point for `jrsp <verify|run|sweep> [flags]`. args excludes the
// program name. Reports go to `out` (or --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jrsp::cli
