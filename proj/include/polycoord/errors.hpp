// Copyright 2026 The polycoord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLYCOORD_ERRORS_HPP
#define POLYCOORD_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polycoord {

/// Malformed game, profile, parameter or document.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The operation needs a graph coordination game and got a general one.
class UnsupportedGame : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Graph structure precondition violated (e.g. not a forest).
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search would exceed the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t required, std::uint64_t budget)
      : std::runtime_error(what + ": requires " + std::to_string(required) +
                           " evaluations, budget is " + std::to_string(budget)),
        required_(required),
        budget_(budget) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t required_;
  std::uint64_t budget_;
};

/// Internal self-check failed. Always an implementation bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace polycoord

#endif  // POLYCOORD_ERRORS_HPP
