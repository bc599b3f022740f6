// Copyright 2026 The Authors.
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

namespace submapg {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A set would contain two actions of the same agent.
class ConstraintViolation : public Error {
  using Error::Error;
};

// Indices or parameters outside their valid range.
class ValidationError : public Error {
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured cap.
class SizeError : public Error {
  using Error::Error;
};

// A point lies outside the polytope, or a scalar parameter is out of domain.
class DomainError : public Error {
  using Error::Error;
};

// Block layouts or vector dimensions disagree.
class ShapeError : public Error {
  using Error::Error;
};

// Agent has no slot in the embedding.
class MappingError : public Error {
  using Error::Error;
};

// Every action of an agent is masked out.
class InfeasibleError : public Error {
  using Error::Error;
};

class ConfigError : public Error {
  using Error::Error;
};

}  // namespace submapg
