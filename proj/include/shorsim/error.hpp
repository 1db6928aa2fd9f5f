// Copyright 2026 The shorsim Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace shorsim {

/// Argument outside the mathematical domain of an operation (gcd(0,0), eps < 0, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Configuration or instance rejected before any simulation starts.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Requested register size exceeds the memory budget.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Multiplier not invertible modulo N.
class NotInvertibleError : public DomainError {
  public:
    using DomainError::DomainError;
};

} // namespace shorsim
