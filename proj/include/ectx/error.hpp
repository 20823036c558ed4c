// Copyright 2026 The ectx Authors.
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

namespace ectx {

class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Vector with norm too small to normalize.
class ZeroVectorError : public Error {
  using Error::Error;
};

// An adjacent pair of observable directions fails cyclic orthogonality.
// Observables are 1-based X1..X5; `first` names the pair (first, first%5+1).
class CyclicityViolationError : public Error {
 public:
  CyclicityViolationError(int first, double overlap);
  int first_index() const { return first_; }
  double overlap() const { return overlap_; }

 private:
  int first_;
  double overlap_;
};

// A built-in state family hit a parameter point where the unnormalized
// amplitudes vanish.
class DegenerateStateError : public Error {
  using Error::Error;
};

class InvalidDistributionError : public Error {
  using Error::Error;
};

class OutOfRangeError : public Error {
  using Error::Error;
};

// A joint outcome forbidden by cyclic exclusivity carries probability mass.
class ExclusivityViolationError : public Error {
  using Error::Error;
};

class MalformedTargetsError : public Error {
  using Error::Error;
};

// Malformed observable configuration file.
class ConfigError : public Error {
  using Error::Error;
};

class IoError : public Error {
  using Error::Error;
};

}  // namespace ectx
