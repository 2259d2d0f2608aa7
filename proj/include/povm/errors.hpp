// Copyright 2026 The Spectral POVM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Exception types thrown by the numerical core, plus the warning sink.
 *
 * Every error the library raises derives from povm::Error so the C API can
 * translate it into a status code in one place.
 */

#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace povm {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A precondition on a physical parameter was violated (e.g. omega_min <= 0).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Two objects that must share a frequency grid do not.
class GridMismatchError : public Error {
  public:
    using Error::Error;
};

class IndexError : public Error {
  public:
    using Error::Error;
};

/// The outcome has (numerically) zero probability or zero weight.
class UnreachableOutcomeError : public Error {
  public:
    using Error::Error;
};

/// Malformed scenario configuration or data table.
class ConfigError : public Error {
  public:
    using Error::Error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

using WarningHandler = std::function<void(const std::string &)>;

/// Replaces the process-wide warning sink; returns the previous one.
/// Passing an empty handler silences warnings. The default writes to stderr.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(const std::string &message);

} // namespace povm
