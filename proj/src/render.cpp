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


#include "bevsim/render.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bevsim
{

namespace
{

template<typename F>
Image paint(int height, int width, int scale, F color_of)
{
  if (scale < 1) {
    fail(ErrorCode::kInvalidArgument, "render scale must be >= 1");
  }
  Image img;
  img.width = width * scale;
  img.height = height * scale;
  img.pixels.resize(static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height));
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      img.pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(img.width) +
        static_cast<std::size_t>(x)] = color_of(y / scale, x / scale);
    }
  }
  return img;
}

Rgb grey(double v)
{
  auto level = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
  return {level, level, level};
}

}  // namespace

const std::array<Rgb, kNumClasses> & class_palette()
{
  static const std::array<Rgb, kNumClasses> palette = {{
    {230, 159, 0},
    {86, 180, 233},
    {0, 158, 115},
    {240, 228, 66},
    {0, 114, 178},
    {213, 94, 0},
    {204, 121, 167},
    {64, 64, 64},
    {255, 0, 0},
    {255, 255, 255},
  }};
  return palette;
}

Image render_labels(const LabelGrid & labels, int scale)
{
  return paint(labels.height(), labels.width(), scale, [&](int r, int c) {
             return class_palette()[static_cast<std::size_t>(labels.at(r, c))];
           });
}

Image render_semantic(const SemanticGrid & grid, int scale)
{
  if (grid.channels() != kNumClasses) {
    fail(ErrorCode::kDimensionMismatch, "semantic render needs 10 channels");
  }
  LabelGrid labels = argmax_labels(grid);
  return paint(grid.height(), grid.width(), scale, [&](int r, int c) {
             for (int k = 0; k < kNumClasses; ++k) {
               if (grid.at(r, c, k) > 0.0) {
                 return class_palette()[static_cast<std::size_t>(labels.at(r, c))];
               }
             }
             return kNoClassColor;
           });
}

Image render_probability(const RealGrid & values, int scale)
{
  return paint(values.height(), values.width(), scale, [&](int r, int c) {
             return grey(values.at(r, c));
           });
}

Image render_mask(const BitMask & mask, int scale)
{
  return paint(mask.height(), mask.width(), scale, [&](int r, int c) {
             return grey(mask.at(r, c) ? 1.0 : 0.0);
           });
}

Bytes encode_ppm(const Image & image)
{
  std::string header = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
    "\n255\n";
  Bytes out(header.begin(), header.end());
  out.reserve(out.size() + image.pixels.size() * 3);
  for (const Rgb & p : image.pixels) {
    out.push_back(p.r);
    out.push_back(p.g);
    out.push_back(p.b);
  }
  return out;
}

void write_ppm(const std::filesystem::path & path, const Image & image)
{
  write_file(path, encode_ppm(image));
}

}  // namespace bevsim
