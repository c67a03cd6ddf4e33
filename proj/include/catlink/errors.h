// Copyright 2026 The catlink Authors
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

#ifndef CATLINK_ERRORS_H
#define CATLINK_ERRORS_H

#include <stdexcept>
#include <string>

namespace catlink {

/// Raised when a caller violates a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a photon-number cutoff leaves more probability mass outside the
/// enumerated range than the caller allowed.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for (mu, nu, alpha) combinations that do not define a qubit, such as
/// mu|-a> - mu|a> as a -> 0.
class DegenerateQubitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a logical operation is requested on a state outside the
/// two-dimensional logical span it is defined on.
class UnsupportedStateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for malformed command-line or config-file input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace catlink

#endif  // CATLINK_ERRORS_H
