// Copyright 2026 The qcrb authors
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

#ifndef QCRB_ERRORS_HPP
#define QCRB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcrb {

// Error categories; their numeric values are the CLI exit codes.
enum class ErrorKind : int {
  invalid_input = 1,
  numerical_failure = 2,
  degenerate_model = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }
  int exit_code() const { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

// Malformed files, shape mismatches, out-of-range arguments.
class InvalidInputError : public Error {
 public:
  explicit InvalidInputError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

// Iteration limits, impossible probabilities, solver breakdowns.
class NumericalFailureError : public Error {
 public:
  explicit NumericalFailureError(const std::string& msg)
      : Error(ErrorKind::numerical_failure, msg) {}
};

// Structurally broken statistical models and weights: trace, positivity,
// support or independence violations.
class DegenerateModelError : public Error {
 public:
  explicit DegenerateModelError(const std::string& msg)
      : Error(ErrorKind::degenerate_model, msg) {}
};

}  // namespace qcrb

#endif  // QCRB_ERRORS_HPP
