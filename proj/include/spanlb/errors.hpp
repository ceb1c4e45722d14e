// Copyright 2026 The spanlb Authors
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

namespace spanlb {

/// Bad caller input: out-of-range ids, malformed files, missing edges.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parameters that make a construction stage vacuous (k = 0, Delta = 1, ...).
class DegenerateParameterError : public InputError {
 public:
  using InputError::InputError;
};

/// A structural precondition of a construction step does not hold, e.g. two
/// designated pairs claim the same base edge during orientation.
class ConstructionViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Work would exceed a configured budget (tuple count, node ceiling).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A guarantee of the construction was contradicted by an exact check. This
/// means the build itself is broken, not that the caller misused the API.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A search finished without a conclusive answer (sampled pigeonhole search).
class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spanlb
