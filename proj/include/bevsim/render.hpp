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


#ifndef BEVSIM__RENDER_HPP_
#define BEVSIM__RENDER_HPP_

#include <array>
#include <cstdint>
#include <filesystem>

#include "bevsim/bytes.hpp"
#include "bevsim/grid.hpp"

namespace bevsim
{

struct Rgb
{
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb &, const Rgb &) = default;
};

/**
 * Fixed class palette:
 *   bedroom (230,159,0)    living_room (86,180,233)  kitchen (0,158,115)
 *   bathroom (240,228,66)  balcony (0,114,178)       storage (213,94,0)
 *   doorway (204,121,167)  wall (64,64,64)           entrance_door (255,0,0)
 *   outside (255,255,255)
 * Cells with no active channel render black.
 */
const std::array<Rgb, kNumClasses> & class_palette();
inline constexpr Rgb kNoClassColor{0, 0, 0};

struct Image
{
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;  // row-major

  const Rgb & at(int row, int col) const
  {
    return pixels[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
             static_cast<std::size_t>(col)];
  }
};

/// Each cell becomes a scale x scale block of its class colour.
Image render_labels(const LabelGrid & labels, int scale = 1);
/// Argmax colour of cells with any channel above zero, black elsewhere.
Image render_semantic(const SemanticGrid & grid, int scale = 1);
/// Grey level round(255 * clamp(v, 0, 1)).
Image render_probability(const RealGrid & values, int scale = 1);
Image render_mask(const BitMask & mask, int scale = 1);

/// Binary PPM (P6, maxval 255).
Bytes encode_ppm(const Image & image);
void write_ppm(const std::filesystem::path & path, const Image & image);

}  // namespace bevsim

#endif  // BEVSIM__RENDER_HPP_
