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

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uavgeo/errors.hpp"

namespace uavgeo {

inline std::vector<std::string> SplitWhitespace(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) {
    tokens.push_back(std::move(token));
  }
  return tokens;
}

inline std::vector<std::string> SplitChar(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string current;
  for (const char c : line) {
    if (c == sep) {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

inline std::string TrimWhitespace(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

// Shortest decimal representation that round-trips a double exactly.
inline std::string FormatDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back = 0.0;
  // Prefer shorter forms when they still parse back bit-exactly.
  for (int prec = 15; prec <= 16; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    if (std::sscanf(shorter, "%lf", &back) == 1 && back == v) {
      return shorter;
    }
  }
  return buf;
}

template <typename T>
T ParseField(const std::string& path, size_t line_no, const std::string& token,
             const char* what) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    // std::from_chars<double> is incomplete on some libstdc++ versions.
    char* end = nullptr;
    const double parsed = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size() || token.empty()) {
      throw ParseError(path, std::string("cannot parse ") + what + " from '" + token + "'",
                       line_no);
    }
    value = static_cast<T>(parsed);
  } else {
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw ParseError(path, std::string("cannot parse ") + what + " from '" + token + "'",
                       line_no);
    }
  }
  return value;
}

// Line reader that skips comments/blank lines for content and tracks line
// numbers for error reporting.
class TextLineReader {
 public:
  explicit TextLineReader(std::string path) : path_(std::move(path)), in_(path_) {
    if (!in_) {
      throw ConfigError("cannot open " + path_);
    }
  }

  size_t line_number() const { return line_number_; }

  // Next non-blank, non-comment line.
  bool NextContentLine(std::string* line) {
    while (NextRawLine(line)) {
      const std::string trimmed = TrimWhitespace(*line);
      if (trimmed.empty() || trimmed[0] == '#') continue;
      *line = trimmed;
      return true;
    }
    return false;
  }

  // Next line verbatim (may be blank). Returns false at EOF.
  bool NextRawLine(std::string* line) {
    if (!std::getline(in_, *line)) return false;
    if (!line->empty() && line->back() == '\r') line->pop_back();
    ++line_number_;
    return true;
  }

 private:
  std::string path_;
  std::ifstream in_;
  size_t line_number_ = 0;
};

}  // namespace uavgeo
