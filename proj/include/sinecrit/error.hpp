// Copyright 2026 The sinecrit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SINECRIT_ERROR_HPP
#define SINECRIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace sinecrit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (CLI exit code 2).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An input file could not be read or parsed (CLI exit code 3).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed: non-convergence, missed zeros, pole hits
/// (CLI exit code 4).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Two eigenvalues closer than the degeneracy threshold.
class DegenerateSpectrum : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Evaluation point coincides with a pole of a rational field.
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace sinecrit

#endif  // SINECRIT_ERROR_HPP
