// Copyright 2026 The icbsim Authors
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

#ifndef ICB_ERRORS_HPP_
#define ICB_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace icb {

// Base class for all errors raised by the library. The CLI maps anything
// derived from InputError to exit code 2 and property failures to exit 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or rejected input (files, flags, graph construction).
class InputError : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraphError : public InputError {
 public:
  using InputError::InputError;
};

class DuplicateEdgeError : public InputError {
 public:
  using InputError::InputError;
};

class SelfLoopError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidTypeSpaceError : public InputError {
 public:
  using InputError::InputError;
};

class GenerationFailedError : public Error {
 public:
  using Error::Error;
};

class InstanceTooLargeError : public InputError {
 public:
  using InputError::InputError;
};

class NotARouterError : public InputError {
 public:
  using InputError::InputError;
};

// The DSIC-B baseline requires a biconnected graph; this is signaled,
// never silently computed around.
class NotBiconnectedError : public InputError {
 public:
  using InputError::InputError;
};

class DeliveryFailureError : public Error {
 public:
  using Error::Error;
};

class FileNotFoundError : public InputError {
 public:
  using InputError::InputError;
};

class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class LengthMismatchError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigInvalidError : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

class UnknownCheckError : public InputError {
 public:
  using InputError::InputError;
};

// An instance has no routers, so per-router metrics are undefined.
class NoRoutersError : public Error {
 public:
  using Error::Error;
};

// No node makes a positive payment with a positive-cost path, so the
// overpayment ratio is undefined.
class NoPayersError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace icb

#endif  // ICB_ERRORS_HPP_
