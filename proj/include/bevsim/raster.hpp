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

#ifndef BEVSIM__RASTER_HPP_
#define BEVSIM__RASTER_HPP_

#include <filesystem>
#include <span>

#include "bevsim/bytes.hpp"
#include "bevsim/grid.hpp"

namespace bevsim
{

// SEMGRIDv1: ASCII header "SEMGRIDv1 <H> <W> <C>\n" followed by exactly H*W
// row-major payload bytes, one class id each. C is 10. Nothing may follow.

inline constexpr std::string_view kRasterMagic = "SEMGRIDv1";
/// Largest accepted side; larger headers raise kDimensionOverflow.
inline constexpr int kRasterMaxSide = 1 << 15;

Bytes encode_raster(const LabelGrid & labels);

/// Decodes a complete SEMGRIDv1 buffer. Errors: kBadMagic, kBadHeader,
/// kDimensionOverflow, kTruncated, kTrailingData, kLabelOutOfRange.
LabelGrid decode_raster(std::span<const std::uint8_t> data);

void write_raster(const LabelGrid & labels, const std::filesystem::path & path);
LabelGrid read_raster(const std::filesystem::path & path);

/// Masks travel as rasters whose payload bytes are 0 or 1.
LabelGrid mask_to_layer(const BitMask & mask);
/// Rejects payload values above 1 with kLabelOutOfRange.
BitMask layer_to_mask(const LabelGrid & layer);

}  // namespace bevsim

#endif  // BEVSIM__RASTER_HPP_
