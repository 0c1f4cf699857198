/* Copyright 2026 The rotorctl Authors. All Rights Reserved.
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

#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

/// Invalid quantum numbers, negative physical inputs, mismatched kinds.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Eigensolver failure, norm drift, non-finite values.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The wave packet reached the top of the truncated basis; enlarge j_cap.
class BasisOverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

class UnsupportedInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rotor
