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

#include "bevsim/grid.hpp"

#include <algorithm>

namespace bevsim
{

namespace
{

constexpr std::array<std::string_view, kNumClasses> kClassNames = {
  "bedroom", "living_room", "kitchen", "bathroom", "balcony",
  "storage", "doorway", "wall", "entrance_door", "outside",
};

}  // namespace

std::string_view error_code_name(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kOk: return "ok";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kBadMagic: return "bad_magic";
    case ErrorCode::kBadHeader: return "bad_header";
    case ErrorCode::kDimensionOverflow: return "dimension_overflow";
    case ErrorCode::kLabelOutOfRange: return "label_out_of_range";
    case ErrorCode::kTruncated: return "truncated";
    case ErrorCode::kTrailingData: return "trailing_data";
    case ErrorCode::kGenerationFailure: return "generation_failure";
    case ErrorCode::kSimulationInvariant: return "simulation_invariant";
    case ErrorCode::kEmptyRegion: return "empty_region";
    case ErrorCode::kCorruptRecord: return "corrupt_record";
    case ErrorCode::kChecksumMismatch: return "checksum_mismatch";
    case ErrorCode::kProtocolMagic: return "protocol_magic";
    case ErrorCode::kProtocolVersion: return "protocol_version";
    case ErrorCode::kProtocolShape: return "protocol_shape";
    case ErrorCode::kProtocolMessage: return "protocol_message";
    case ErrorCode::kTransport: return "transport";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kConfig: return "config";
    case ErrorCode::kUnknown: return "unknown";
  }
  return "unknown";
}

ClassId class_from_index(int id)
{
  if (id < 0 || id >= kNumClasses) {
    fail(ErrorCode::kInvalidArgument, "class id out of range: " + std::to_string(id));
  }
  return static_cast<ClassId>(id);
}

std::string_view class_name(ClassId c)
{
  return kClassNames[static_cast<std::size_t>(index_of(c))];
}

std::optional<ClassId> class_from_name(std::string_view name)
{
  for (int i = 0; i < kNumClasses; ++i) {
    if (kClassNames[static_cast<std::size_t>(i)] == name) {
      return static_cast<ClassId>(i);
    }
  }
  return std::nullopt;
}

std::size_t count_set(const BitMask & mask)
{
  return static_cast<std::size_t>(
    std::count_if(mask.values().begin(), mask.values().end(), [](std::uint8_t v) {return v != 0;}));
}

BitMask mask_or(const BitMask & a, const BitMask & b)
{
  require_same_plane(a, b, "mask_or");
  BitMask out(a.height(), a.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] = (a.values()[i] || b.values()[i]) ? 1 : 0;
  }
  return out;
}

BitMask mask_not(const BitMask & a)
{
  BitMask out(a.height(), a.width());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values()[i] = a.values()[i] ? 0 : 1;
  }
  return out;
}

ChannelGrid::ChannelGrid(int height, int width, int channels, double fill)
: height_(height), width_(width), channels_(channels)
{
  if (height < 0 || width < 0 || channels < 0) {
    fail(ErrorCode::kInvalidArgument, "negative channel grid dimension");
  }
  values_.assign(
    static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
    static_cast<std::size_t>(channels), fill);
}

RealGrid ChannelGrid::channel(int ch) const
{
  if (ch < 0 || ch >= channels_) {
    fail(ErrorCode::kInvalidArgument, "channel out of range: " + std::to_string(ch));
  }
  RealGrid out(height_, width_);
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c < width_; ++c) {
      out.at(r, c) = at(r, c, ch);
    }
  }
  return out;
}

SemanticGrid onehot_encode(const LabelGrid & labels)
{
  SemanticGrid out(labels.height(), labels.width(), kNumClasses);
  for (int r = 0; r < labels.height(); ++r) {
    for (int c = 0; c < labels.width(); ++c) {
      out.at(r, c, index_of(labels.at(r, c))) = 1.0;
    }
  }
  return out;
}

LabelGrid argmax_labels(const SemanticGrid & grid)
{
  if (grid.channels() != kNumClasses) {
    fail(ErrorCode::kDimensionMismatch,
      "argmax expects " + std::to_string(kNumClasses) + " channels, got " +
      std::to_string(grid.channels()));
  }
  LabelGrid out(grid.height(), grid.width());
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      int best = 0;
      for (int k = 1; k < kNumClasses; ++k) {
        if (grid.at(r, c, k) > grid.at(r, c, best)) {
          best = k;
        }
      }
      out.at(r, c) = static_cast<ClassId>(best);
    }
  }
  return out;
}

SemanticGrid apply_unexplored_mask(const SemanticGrid & gt, const BitMask & explored)
{
  require_same_plane(gt, explored, "apply_unexplored_mask");
  SemanticGrid out = gt;
  for (int r = 0; r < gt.height(); ++r) {
    for (int c = 0; c < gt.width(); ++c) {
      if (explored.at(r, c)) {
        for (int k = 0; k < gt.channels(); ++k) {
          out.at(r, c, k) = 0.0;
        }
      }
    }
  }
  return out;
}

std::array<std::uint64_t, kNumClasses> class_histogram(const LabelGrid & labels)
{
  std::array<std::uint64_t, kNumClasses> hist{};
  for (ClassId c : labels.values()) {
    ++hist[static_cast<std::size_t>(index_of(c))];
  }
  return hist;
}

}  // namespace bevsim
