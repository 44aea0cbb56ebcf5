// Copyright 2026 The quditree developers
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
#include <utility>
#include <vector>

namespace qdt {

/// One node whose declared dimension is below the minimum the synthesizer
/// needs for it.
struct DimViolation {
  int node;
  int declared;
  int required;

  bool operator==(const DimViolation&) const = default;
};

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed values: indices out of range, non-unitary matrices,
/// register mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Unreadable or malformed input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The coupling graph is not connected.
class ConnectivityError : public Error {
 public:
  using Error::Error;
};

/// An edge set that was expected to be a tree is cyclic, disconnected, or
/// does not contain a referenced node.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Required configuration is missing (for example a node without a declared
/// dimension when feasibility has to be checked).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Declared qudit dimensions do not support the requested synthesis.
class FeasibilityError : public Error {
 public:
  FeasibilityError(const std::string& msg, std::vector<DimViolation> violations)
      : Error(msg), violations_(std::move(violations)) {}

  const std::vector<DimViolation>& violations() const { return violations_; }

 private:
  std::vector<DimViolation> violations_;
};

}  // namespace qdt
