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

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

#include "uavgeo/errors.hpp"

namespace uavgeo {

// Little-endian binary reader that tracks the byte offset so truncation and
// corruption errors can name the exact position.
class BinaryReader {
 public:
  explicit BinaryReader(std::string path)
      : path_(std::move(path)), in_(path_, std::ios::binary) {
    if (!in_) {
      throw ConfigError("cannot open " + path_);
    }
    in_.seekg(0, std::ios::end);
    file_size_ = static_cast<size_t>(in_.tellg());
    in_.seekg(0, std::ios::beg);
  }

  size_t offset() const { return offset_; }
  size_t file_size() const { return file_size_; }
  const std::string& path() const { return path_; }

  // Rejects a count field that could not possibly fit in the remaining
  // bytes, before any allocation sized by it.
  void CheckCountPlausible(uint64_t count, size_t min_bytes_each, const char* what) {
    const size_t remaining = file_size_ > offset_ ? file_size_ - offset_ : 0;
    if (min_bytes_each > 0 && count > remaining / min_bytes_each) {
      throw ParseError(path_,
                       std::string("implausible ") + what + " count " + std::to_string(count) +
                           " for " + std::to_string(remaining) + " remaining bytes",
                       std::nullopt, offset_);
    }
  }

  void ReadBytes(void* dst, size_t n) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      throw ParseError(path_, "unexpected end of file", std::nullopt,
                       offset_ + static_cast<size_t>(in_.gcount()));
    }
    offset_ += n;
  }

  bool AtEof() {
    return in_.peek() == std::char_traits<char>::eof();
  }

  uint8_t ReadU8() {
    uint8_t v;
    ReadBytes(&v, 1);
    return v;
  }

  uint16_t ReadU16() { return static_cast<uint16_t>(ReadLe(2)); }
  uint32_t ReadU32() { return static_cast<uint32_t>(ReadLe(4)); }
  uint64_t ReadU64() { return ReadLe(8); }
  int32_t ReadI32() { return static_cast<int32_t>(ReadU32()); }

  float ReadF32() {
    const uint32_t bits = ReadU32();
    float v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  double ReadF64() {
    const uint64_t bits = ReadU64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  }

  std::string ReadCString() {
    std::string out;
    while (true) {
      char c;
      ReadBytes(&c, 1);
      if (c == '\0') break;
      out.push_back(c);
    }
    return out;
  }

 private:
  uint64_t ReadLe(int n) {
    uint8_t buf[8];
    ReadBytes(buf, static_cast<size_t>(n));
    uint64_t v = 0;
    for (int i = n - 1; i >= 0; --i) {
      v = (v << 8) | buf[i];
    }
    return v;
  }

  std::string path_;
  std::ifstream in_;
  size_t offset_ = 0;
  size_t file_size_ = 0;
};

class BinaryWriter {
 public:
  explicit BinaryWriter(std::string path)
      : path_(std::move(path)), out_(path_, std::ios::binary | std::ios::trunc) {
    if (!out_) {
      throw IoError("cannot open " + path_ + " for writing");
    }
  }

  ~BinaryWriter() noexcept(false) {
    out_.flush();
    if (!out_ && !std::uncaught_exceptions()) {
      throw IoError("write failed: " + path_);
    }
  }

  void WriteBytes(const void* src, size_t n) {
    out_.write(static_cast<const char*>(src), static_cast<std::streamsize>(n));
  }

  void WriteU8(uint8_t v) { WriteBytes(&v, 1); }
  void WriteU16(uint16_t v) { WriteLe(v, 2); }
  void WriteU32(uint32_t v) { WriteLe(v, 4); }
  void WriteU64(uint64_t v) { WriteLe(v, 8); }
  void WriteI32(int32_t v) { WriteU32(static_cast<uint32_t>(v)); }

  void WriteF32(float v) {
    uint32_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    WriteU32(bits);
  }

  void WriteF64(double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    WriteU64(bits);
  }

  void WriteCString(const std::string& s) {
    WriteBytes(s.data(), s.size());
    WriteU8(0);
  }

 private:
  void WriteLe(uint64_t v, int n) {
    uint8_t buf[8];
    for (int i = 0; i < n; ++i) {
      buf[i] = static_cast<uint8_t>(v >> (8 * i));
    }
    WriteBytes(buf, static_cast<size_t>(n));
  }

  std::string path_;
  std::ofstream out_;
};

}  // namespace uavgeo
