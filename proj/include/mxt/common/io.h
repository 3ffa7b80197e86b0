// Copyright 2026 The MxT Authors
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

#ifndef MXT_COMMON_IO_H_
#define MXT_COMMON_IO_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mxt {

// Shortest text form with at most 9 significant digits.
std::string FormatReal(double value);
// Rounds to the value FormatReal would print, so text round trips are exact.
double Canonical(double value);
double ParseReal(std::string_view text);
long long ParseInt(std::string_view text);

std::vector<std::string_view> SplitWhitespace(std::string_view line);
std::vector<std::string> SplitString(std::string_view text, char delimiter);
std::string_view Trim(std::string_view text);

uint64_t Fnv1a64(std::span<const uint8_t> bytes);

// Little-endian append-only byte buffer.
class ByteWriter {
 public:
  void U16(uint16_t v);
  void U32(uint32_t v);
  void U64(uint64_t v);
  void F32(float v);
  void F64(double v);
  void Bytes(std::string_view bytes);
  // u32 length prefix followed by the bytes.
  void String(std::string_view s);

  const std::vector<uint8_t>& data() const { return data_; }
  std::vector<uint8_t>& data() { return data_; }

 private:
  std::vector<uint8_t> data_;
};

// Bounds-checked reader; running past the end throws a corruption error.
class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint16_t U16();
  uint32_t U32();
  uint64_t U64();
  float F32();
  double F64();
  std::string Bytes(size_t n);
  std::string String();

  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }

 private:
  void Need(size_t n) const;

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

std::vector<uint8_t> ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::span<const uint8_t> bytes);
std::string ReadFileText(const std::string& path);
void WriteFileText(const std::string& path, std::string_view text);

}  // namespace mxt

#endif  // MXT_COMMON_IO_H_
