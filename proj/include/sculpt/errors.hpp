/* Copyright 2026 The cavity-sculpt Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef SCULPT_ERRORS_HPP_
#define SCULPT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sculpt {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The truncated Fock basis is too small for the requested operation.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, int required_n_max)
      : Error(what), required_n_max_(required_n_max) {}
  /// Smallest n_max that would satisfy the violated precondition.
  int required_n_max() const { return required_n_max_; }

 private:
  int required_n_max_;
};

/// A state vector with (near-)zero norm or otherwise unusable amplitudes.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// A detection branch with probability below the meaningful threshold.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace sculpt

#endif  // SCULPT_ERRORS_HPP_
