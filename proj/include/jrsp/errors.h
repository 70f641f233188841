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
#include <stdexcept>
#include <string>

namespace jrsp {

// Input violates an operation's precondition in a way the caller could not
// have made valid (wrong mode, wrong arity). Maps to CLI exit code 2.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A size guard was hit: too many qubits or too many branches to enumerate.
// Maps to CLI exit code 3.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what, std::uint64_t requested = 0)
      : std::runtime_error(what), requested_(requested) {}

  // The quantity that exceeded the limit (qubits or branches), 0 if unknown.
  std::uint64_t requested() const noexcept { return requested_; }

 private:
  std::uint64_t requested_;
};

// A forced measurement outcome has (numerically) zero probability.
class UnreachableBranchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jrsp
