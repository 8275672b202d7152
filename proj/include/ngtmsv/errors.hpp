// Copyright 2026 The ngtmsv Authors
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

namespace ngtmsv {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input outside the physical parameter domain (λ ≥ 1, τ ∉ (0,1], ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Dimension mismatches and malformed engine inputs.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A physically real quantity carried an imaginary residue, or left its range.
class NumericalConsistencyError : public Error {
 public:
  using Error::Error;
};

// Normalisation by a vanishing success probability or QFI.
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// The parity signal is stationary, so error propagation is undefined.
class StationaryPointError : public Error {
 public:
  using Error::Error;
};

// Fock-space cutoff too small for the requested operation.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

// Bad command-line flags or configuration entries.
class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ngtmsv
