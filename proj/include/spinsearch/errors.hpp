// Copyright 2026 The spinsearch Authors
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

namespace spinsearch {

/** Base class of every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** Qubit or list index outside its admissible range. */
class IndexError : public Error {
 public:
  using Error::Error;
};

/** Argument outside the mathematical domain of an operation. */
class DomainError : public Error {
 public:
  using Error::Error;
};

/** Input violates a documented precondition (e.g. non-Hermitian generator). */
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/** Spin system or pipeline configured inconsistently. */
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/** Matrix logarithm requested for an eigenphase sitting on the branch cut. */
class BranchAmbiguityError : public Error {
 public:
  using Error::Error;
};

/** Phase cycle too short to separate all coherence orders. */
class AliasingError : public Error {
 public:
  using Error::Error;
};

/** Readout coefficient too small to fix its sign. */
class AmbiguousReadoutError : public Error {
 public:
  using Error::Error;
};

/** Acquisition grid does not resolve every transition frequency. */
class SamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace spinsearch
