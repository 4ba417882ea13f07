// Copyright (c) 2026 The uavgeo authors.
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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace uavgeo {

// Error categories; the numeric values are the CLI exit codes.
enum class ErrorKind : int {
  kConfig = 1,      // bad usage, missing paths, out-of-range parameters
  kFormat = 2,      // malformed or invalid input data
  kProcessing = 3,  // valid inputs, failed computation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message)
      : Error(ErrorKind::kConfig, message) {}
};

// Malformed file contents. Carries the offending path and, when known, a
// line number (text formats) or byte offset (binary formats).
class ParseError : public Error {
 public:
  ParseError(std::string path, const std::string& message,
             std::optional<size_t> line = std::nullopt,
             std::optional<size_t> byte_offset = std::nullopt)
      : Error(ErrorKind::kFormat, Format(path, message, line, byte_offset)),
        path_(std::move(path)),
        line_(line),
        byte_offset_(byte_offset) {}

  const std::string& path() const { return path_; }
  std::optional<size_t> line() const { return line_; }
  std::optional<size_t> byte_offset() const { return byte_offset_; }

 private:
  static std::string Format(const std::string& path, const std::string& message,
                            std::optional<size_t> line,
                            std::optional<size_t> byte_offset) {
    std::string out = path;
    if (line) {
      out += ":" + std::to_string(*line);
    } else if (byte_offset) {
      out += " @ byte " + std::to_string(*byte_offset);
    }
    out += ": " + message;
    return out;
  }

  std::string path_;
  std::optional<size_t> line_;
  std::optional<size_t> byte_offset_;
};

// Well-formed data violating a documented invariant (duplicate names,
// confidence out of range, dangling references, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message)
      : Error(ErrorKind::kFormat, message) {}
};

// Mathematical precondition violations: out-of-domain latitude, point behind
// camera, degenerate configurations.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& message)
      : Error(ErrorKind::kProcessing, message) {}
};

// Coplanar/collinear/coincident input configurations that leave the solve
// underdetermined.
class DegenerateError : public DomainError {
 public:
  explicit DegenerateError(const std::string& message) : DomainError(message) {}
};

class ProcessingError : public Error {
 public:
  explicit ProcessingError(const std::string& message)
      : Error(ErrorKind::kProcessing, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorKind::kProcessing, message) {}
};

}  // namespace uavgeo
