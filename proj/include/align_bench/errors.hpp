// SPDX-License-Identifier: Apache-2.0
//
// align_bench: interference alignment beamforming workbench
// Copyright (C) 2026 The align_bench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace align_bench {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its documented domain (K < 3, bad bounds, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A diagonal entry or a pivot is zero to working tolerance.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, std::optional<std::size_t> index, double condition)
      : Error(what), index_(index), condition_(condition) {}

  /// Offending diagonal index, when the failure is attributable to one entry.
  std::optional<std::size_t> index() const noexcept { return index_; }
  /// Ratio of largest to smallest pivot magnitude (infinity for an exact zero).
  double condition() const noexcept { return condition_; }

 private:
  std::optional<std::size_t> index_;
  double condition_;
};

/// The beamforming construction collapsed (rank deficient at tolerance).
class DegenerateDesignError : public Error {
 public:
  using Error::Error;
};

/// A channel or design file could not be parsed or violates an invariant.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace align_bench
