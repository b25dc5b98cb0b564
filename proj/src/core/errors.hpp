// Copyright 2026 The crowdsense Authors
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

#ifndef CROWDSENSE_CORE_ERRORS_HPP_
#define CROWDSENSE_CORE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crowdsense {

enum class ErrorKind {
  kInvalidConfig,
  kParse,
  kSchema,
  kOracleGuard,
  kInternalConsistency,
  kIo,
};

const char* ToString(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidConfigError : public Error {
 public:
  explicit InvalidConfigError(const std::string& message)
      : Error(ErrorKind::kInvalidConfig, message) {}
};

// Line numbers are 1-based and count the header line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, const std::string& message)
      : Error(ErrorKind::kSchema, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class OracleGuardError : public Error {
 public:
  explicit OracleGuardError(const std::string& message)
      : Error(ErrorKind::kOracleGuard, message) {}
};

class InternalConsistencyError : public Error {
 public:
  explicit InternalConsistencyError(const std::string& message)
      : Error(ErrorKind::kInternalConsistency, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error(ErrorKind::kIo, message) {}
};

}  // namespace crowdsense

#endif  // CROWDSENSE_CORE_ERRORS_HPP_
