// Copyright 2026 The pircache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIRCACHE_ERROR_H_
#define PIRCACHE_ERROR_H_

#include <stdexcept>
#include <string>

namespace pircache {

// Malformed input: bad parameters, inconsistent dimensions, unparsable
// configuration. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what)
      : std::invalid_argument(what) {}
};

// A well-formed request that violates a scheme constraint (cache budget,
// divisibility of code dimensions, protocol feasibility). Exit code 3.
class ConstraintViolation : public std::domain_error {
 public:
  explicit ConstraintViolation(const std::string& what)
      : std::domain_error(what) {}
};

// A run completed but a checked property did not hold (recovery mismatch,
// privacy distance above zero, inconsistent linear system). Exit code 4.
class VerificationFailure : public std::runtime_error {
 public:
  explicit VerificationFailure(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace pircache

#endif  // PIRCACHE_ERROR_H_
