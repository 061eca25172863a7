/* Copyright 2026 The ptdp Authors. All Rights Reserved.

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

#ifndef PTDP_ERRORS_H_
#define PTDP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ptdp {

// Base class for every error raised by the library. The CLI maps subclasses
// onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A domain object violated one of its invariants (e.g. h not divisible by a).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Input file could not be read or did not match the expected schema.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Rank placement impossible under the requested policy.
class MappingError : public Error {
 public:
  using Error::Error;
};

class ScheduleError : public Error {
 public:
  using Error::Error;
};

// The static task order contains a dependency cycle.
class DeadlockError : public Error {
 public:
  using Error::Error;
};

// No parallel configuration satisfies the query. The message carries the
// binding constraints.
class EmptyPlanError : public Error {
 public:
  using Error::Error;
};

}  // namespace ptdp

#endif  // PTDP_ERRORS_H_
