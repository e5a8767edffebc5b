// Copyright 2026 The bevsim Authors
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

#ifndef BEVSIM__BYTES_HPP_
#define BEVSIM__BYTES_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "bevsim/error.hpp"

namespace bevsim
{

using Bytes = std::vector<std::uint8_t>;

/// Little-endian appender.
class ByteWriter
{
public:
  explicit ByteWriter(Bytes & out)
  : out_(out) {}

  void u8(std::uint8_t v) {out_.push_back(v);}
  void u16(std::uint16_t v) {put(v, 2);}
  void u32(std::uint32_t v) {put(v, 4);}
  void u64(std::uint64_t v) {put(v, 8);}
  void i32(std::int32_t v) {put(static_cast<std::uint32_t>(v), 4);}
  void f32(float v) {u32(std::bit_cast<std::uint32_t>(v));}
  void raw(std::string_view s) {out_.insert(out_.end(), s.begin(), s.end());}
  void raw(std::span<const std::uint8_t> s) {out_.insert(out_.end(), s.begin(), s.end());}

  std::size_t size() const {return out_.size();}

private:
  void put(std::uint64_t v, int n)
  {
    for (int i = 0; i < n; ++i) {
      out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
  }

  Bytes & out_;
};

/// Little-endian cursor. Running past the end throws `short_code`.
class ByteReader
{
public:
  ByteReader(std::span<const std::uint8_t> data, ErrorCode short_code, std::string context)
  : data_(data), short_code_(short_code), context_(std::move(context)) {}

  std::uint8_t u8() {return static_cast<std::uint8_t>(get(1));}
  std::uint16_t u16() {return static_cast<std::uint16_t>(get(2));}
  std::uint32_t u32() {return static_cast<std::uint32_t>(get(4));}
  std::uint64_t u64() {return get(8);}
  std::int32_t i32() {return static_cast<std::int32_t>(u32());}
  float f32() {return std::bit_cast<float>(u32());}
  std::span<const std::uint8_t> take(std::size_t n)
  {
    need(n);
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }
  bool match(std::string_view tag)
  {
    need(tag.size());
    bool ok = std::memcmp(data_.data() + pos_, tag.data(), tag.size()) == 0;
    pos_ += tag.size();
    return ok;
  }

  std::size_t position() const {return pos_;}
  std::size_t remaining() const {return data_.size() - pos_;}

private:
  void need(std::size_t n)
  {
    if (data_.size() - pos_ < n) {
      fail(short_code_, context_ + ": need " + std::to_string(n) + " bytes at offset " +
        std::to_string(pos_) + ", have " + std::to_string(data_.size() - pos_));
    }
  }
  std::uint64_t get(int n)
  {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(data_[pos_ + static_cast<std::size_t>(i)]) << (8 * i);
    }
    pos_ += static_cast<std::size_t>(n);
    return v;
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
  ErrorCode short_code_;
  std::string context_;
};

Bytes read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, std::span<const std::uint8_t> data);
void write_text_file(const std::filesystem::path & path, std::string_view text);

/// CRC-32 (IEEE 802.3 polynomial, as in zlib/PNG).
std::uint32_t crc32(std::span<const std::uint8_t> data);

}  // namespace bevsim

#endif  // BEVSIM__BYTES_HPP_
