// Copyright 2026 The isingshor Authors
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

#ifndef ISINGSHOR_ERRORS_HPP_
#define ISINGSHOR_ERRORS_HPP_

#include <stdexcept>

namespace isingshor {

/// Invalid parameters, out-of-range indices, or an ill-posed request.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The fixed-step integrator lost unitarity beyond the configured tolerance.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Period or factor could not be recovered from a measurement distribution.
class ExtractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The built-in pulse protocol failed its resonant-oracle self-check.
class CompilationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace isingshor

#endif  // ISINGSHOR_ERRORS_HPP_
