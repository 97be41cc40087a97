// Copyright 2026 The mimkit Authors
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

namespace mim {

// Maps 1:1 onto the C API status codes and CLI exit codes.
enum class ErrorKind {
  validation,  // bad input data or arguments
  config,      // inconsistent configuration (e.g. "&markov" without a model)
  io,          // filesystem or network failure
  runtime,     // anything else
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& message) {
  return Error(ErrorKind::validation, message);
}

inline Error config_error(const std::string& message) {
  return Error(ErrorKind::config, message);
}

inline Error io_error(const std::string& message) {
  return Error(ErrorKind::io, message);
}

inline Error runtime_failure(const std::string& message) {
  return Error(ErrorKind::runtime, message);
}

const char* to_string(ErrorKind kind) noexcept;

}  // namespace mim
