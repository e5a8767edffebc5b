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

#include "bevsim/raster.hpp"

#include <algorithm>
#include <string>

namespace bevsim
{

namespace
{

// Longest header we accept: magic + three 10-digit fields + separators.
constexpr std::size_t kMaxHeaderLength = 64;

// Parses one decimal field terminated by `term`. Returns false on syntax errors.
bool parse_field(std::string_view & rest, char term, long long & value, bool & overflow)
{
  std::size_t i = 0;
  value = 0;
  while (i < rest.size() && rest[i] >= '0' && rest[i] <= '9') {
    if (value > (1LL << 40)) {
      overflow = true;
    } else {
      value = value * 10 + (rest[i] - '0');
    }
    ++i;
  }
  if (i == 0 || i >= rest.size() || rest[i] != term) {
    return false;
  }
  rest.remove_prefix(i + 1);
  return true;
}

}  // namespace

Bytes encode_raster(const LabelGrid & labels)
{
  std::string header = std::string(kRasterMagic) + " " + std::to_string(labels.height()) + " " +
    std::to_string(labels.width()) + " " + std::to_string(kNumClasses) + "\n";
  Bytes out;
  out.reserve(header.size() + labels.size());
  out.insert(out.end(), header.begin(), header.end());
  for (ClassId c : labels.values()) {
    out.push_back(static_cast<std::uint8_t>(c));
  }
  return out;
}

LabelGrid decode_raster(std::span<const std::uint8_t> data)
{
  if (data.size() < kRasterMagic.size() ||
    !std::equal(kRasterMagic.begin(), kRasterMagic.end(), data.begin()))
  {
    fail(ErrorCode::kBadMagic, "not a SEMGRIDv1 raster");
  }
  auto limit = std::min(data.size(), kMaxHeaderLength);
  auto nl = std::find(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(limit), '\n');
  if (nl == data.begin() + static_cast<std::ptrdiff_t>(limit)) {
    if (data.size() < kMaxHeaderLength) {
      fail(ErrorCode::kTruncated, "raster header not terminated");
    }
    fail(ErrorCode::kBadHeader, "raster header too long");
  }
  std::string_view header(reinterpret_cast<const char *>(data.data()),
    static_cast<std::size_t>(nl - data.begin()) + 1);
  header.remove_prefix(kRasterMagic.size());
  if (header.empty() || header.front() != ' ') {
    fail(ErrorCode::kBadHeader, "missing separator after magic");
  }
  header.remove_prefix(1);

  long long h = 0, w = 0, c = 0;
  bool overflow = false;
  if (!parse_field(header, ' ', h, overflow) || !parse_field(header, ' ', w, overflow) ||
    !parse_field(header, '\n', c, overflow) || !header.empty())
  {
    fail(ErrorCode::kBadHeader, "malformed dimension fields");
  }
  if (overflow || h > kRasterMaxSide || w > kRasterMaxSide) {
    fail(ErrorCode::kDimensionOverflow, "raster dimensions exceed " + std::to_string(kRasterMaxSide));
  }
  if (h <= 0 || w <= 0) {
    fail(ErrorCode::kBadHeader, "raster dimensions must be positive");
  }
  if (c != kNumClasses) {
    fail(ErrorCode::kBadHeader, "channel count must be 10, got " + std::to_string(c));
  }

  auto payload = data.subspan(static_cast<std::size_t>(nl - data.begin()) + 1);
  auto expected = static_cast<std::size_t>(h * w);
  if (payload.size() < expected) {
    fail(ErrorCode::kTruncated, "payload has " + std::to_string(payload.size()) + " of " +
      std::to_string(expected) + " bytes");
  }
  if (payload.size() > expected) {
    fail(ErrorCode::kTrailingData, std::to_string(payload.size() - expected) +
      " bytes after payload");
  }
  LabelGrid out(static_cast<int>(h), static_cast<int>(w));
  for (std::size_t i = 0; i < expected; ++i) {
    if (payload[i] >= kNumClasses) {
      fail(ErrorCode::kLabelOutOfRange, "byte " + std::to_string(payload[i]) + " at cell " +
        std::to_string(i));
    }
    out.values()[i] = static_cast<ClassId>(payload[i]);
  }
  return out;
}

void write_raster(const LabelGrid & labels, const std::filesystem::path & path)
{
  write_file(path, encode_raster(labels));
}

LabelGrid read_raster(const std::filesystem::path & path)
{
  return decode_raster(read_file(path));
}

LabelGrid mask_to_layer(const BitMask & mask)
{
  LabelGrid out(mask.height(), mask.width());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    out.values()[i] = mask.values()[i] ? static_cast<ClassId>(1) : static_cast<ClassId>(0);
  }
  return out;
}

BitMask layer_to_mask(const LabelGrid & layer)
{
  BitMask out(layer.height(), layer.width());
  for (std::size_t i = 0; i < layer.size(); ++i) {
    auto v = index_of(layer.values()[i]);
    if (v > 1) {
      fail(ErrorCode::kLabelOutOfRange, "mask layer value " + std::to_string(v));
    }
    out.values()[i] = static_cast<std::uint8_t>(v);
  }
  return out;
}

}  // namespace bevsim
