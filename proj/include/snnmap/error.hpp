// Copyright 2026 The snnmap Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace snnmap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document. Carries the 1-based line when known.
class ParseError : public Error {
  public:
    ParseError(const std::string &what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line)
    {
    }
    int line() const { return line_; }

  private:
    int line_;
};

/// Well-formed input that violates a documented invariant.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// Missing or inconsistent run configuration.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// No assignment satisfies the hardware constraints.
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// Balance equations only admit the zero solution.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

/// Timed or abstract execution stalled.
class DeadlockError : public Error {
  public:
    using Error::Error;
};

/// Execution did not reach a recurrent state within the state budget.
class BudgetExceededError : public Error {
  public:
    using Error::Error;
};

} // namespace snnmap
