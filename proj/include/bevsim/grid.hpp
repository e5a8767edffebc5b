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

#ifndef BEVSIM__GRID_HPP_
#define BEVSIM__GRID_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bevsim/error.hpp"

namespace bevsim
{

/**
 * Semantic class taxonomy. Ids 0-6 are the room classes a query may name,
 * 7-9 are structure. The numeric ids are the on-disk byte values.
 */
enum class ClassId : std::uint8_t
{
  kBedroom = 0,
  kLivingRoom = 1,
  kKitchen = 2,
  kBathroom = 3,
  kBalcony = 4,
  kStorage = 5,
  kDoorway = 6,
  kWall = 7,
  kEntranceDoor = 8,
  kOutside = 9,
};

inline constexpr int kNumClasses = 10;
inline constexpr int kNumQueryClasses = 7;
/// Classes that form room regions (doorway excluded).
inline constexpr int kNumRegionClasses = 6;

constexpr int index_of(ClassId c) {return static_cast<int>(c);}

/// Throws kInvalidArgument for ids outside [0, 9].
ClassId class_from_index(int id);
std::string_view class_name(ClassId c);
std::optional<ClassId> class_from_name(std::string_view name);

constexpr bool is_query_class(ClassId c) {return index_of(c) < kNumQueryClasses;}
constexpr bool is_region_class(ClassId c) {return index_of(c) < kNumRegionClasses;}
constexpr bool is_free_class(ClassId c)
{
  return index_of(c) < kNumQueryClasses || c == ClassId::kEntranceDoor;
}
constexpr bool is_obstacle_class(ClassId c)
{
  return c == ClassId::kWall || c == ClassId::kOutside;
}

struct Cell
{
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Cell &, const Cell &) = default;
  Cell operator+(const Cell & o) const {return {row + o.row, col + o.col};}
};

using Pose = Cell;

/// 4-neighbourhood offsets in (row, col) order.
inline constexpr std::array<Cell, 4> kNeighbors4 = {{{-1, 0}, {0, -1}, {0, 1}, {1, 0}}};

/// Dense row-major 2D raster.
template<typename T>
class Grid
{
public:
  Grid() = default;
  Grid(int height, int width, T fill = T{})
  : height_(height), width_(width),
    values_(static_cast<std::size_t>(checked_area(height, width)), fill) {}

  int height() const {return height_;}
  int width() const {return width_;}
  std::size_t size() const {return values_.size();}
  bool empty() const {return values_.empty();}

  bool contains(Cell c) const
  {
    return c.row >= 0 && c.col >= 0 && c.row < height_ && c.col < width_;
  }
  std::size_t index(Cell c) const
  {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c.col);
  }
  Cell cell(std::size_t index) const
  {
    return {static_cast<int>(index / static_cast<std::size_t>(width_)),
      static_cast<int>(index % static_cast<std::size_t>(width_))};
  }

  T & operator[](Cell c) {return values_[index(c)];}
  const T & operator[](Cell c) const {return values_[index(c)];}
  T & at(int row, int col) {return values_[index({row, col})];}
  const T & at(int row, int col) const {return values_[index({row, col})];}

  std::span<T> values() {return values_;}
  std::span<const T> values() const {return values_;}

  template<typename U>
  bool same_shape(const Grid<U> & o) const
  {
    return height_ == o.height() && width_ == o.width();
  }

  friend bool operator==(const Grid &, const Grid &) = default;

private:
  static long long checked_area(int h, int w)
  {
    if (h < 0 || w < 0) {
      fail(ErrorCode::kInvalidArgument, "negative grid dimension");
    }
    return static_cast<long long>(h) * w;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<T> values_;
};

using LabelGrid = Grid<ClassId>;
/// One byte per cell, 0 or 1.
using BitMask = Grid<std::uint8_t>;
using RealGrid = Grid<double>;

std::size_t count_set(const BitMask & mask);
BitMask mask_or(const BitMask & a, const BitMask & b);
BitMask mask_not(const BitMask & a);

/// H x W x C real raster stored cell-major: value(r, c, k) at ((r * W + c) * C + k).
/// Holds one-hot semantics, per-channel probabilities and raw logits alike.
class ChannelGrid
{
public:
  ChannelGrid() = default;
  ChannelGrid(int height, int width, int channels, double fill = 0.0);

  int height() const {return height_;}
  int width() const {return width_;}
  int channels() const {return channels_;}

  double & at(int row, int col, int ch)
  {
    return values_[offset(row, col, ch)];
  }
  double at(int row, int col, int ch) const
  {
    return values_[offset(row, col, ch)];
  }
  double & at(Cell c, int ch) {return at(c.row, c.col, ch);}
  double at(Cell c, int ch) const {return at(c.row, c.col, ch);}

  std::span<double> values() {return values_;}
  std::span<const double> values() const {return values_;}

  /// Copies channel `ch` out as a 2D raster.
  RealGrid channel(int ch) const;

  template<typename U>
  bool same_plane(const Grid<U> & g) const
  {
    return height_ == g.height() && width_ == g.width();
  }
  bool same_shape(const ChannelGrid & o) const
  {
    return height_ == o.height_ && width_ == o.width_ && channels_ == o.channels_;
  }

  friend bool operator==(const ChannelGrid &, const ChannelGrid &) = default;

private:
  std::size_t offset(int row, int col, int ch) const
  {
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col)) * static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(ch);
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<double> values_;
};

using SemanticGrid = ChannelGrid;

/// Expands categorical labels into the 10-channel one-hot form.
SemanticGrid onehot_encode(const LabelGrid & labels);

/// Per-cell argmax over the 10 channels; ties go to the lowest class id.
LabelGrid argmax_labels(const SemanticGrid & grid);

/// output(i, j, c) = gt(i, j, c) * (1 - explored(i, j)).
SemanticGrid apply_unexplored_mask(const SemanticGrid & gt, const BitMask & explored);

/// Per-class cell counts.
std::array<std::uint64_t, kNumClasses> class_histogram(const LabelGrid & labels);

/// Throws kDimensionMismatch unless both rasters share H x W.
template<typename A, typename B>
void require_same_plane(const A & a, const B & b, std::string_view what)
{
  if (a.height() != b.height() || a.width() != b.width()) {
    fail(ErrorCode::kDimensionMismatch,
      std::string(what) + ": " + std::to_string(a.height()) + "x" + std::to_string(a.width()) +
      " vs " + std::to_string(b.height()) + "x" + std::to_string(b.width()));
  }
}

}  // namespace bevsim

#endif  // BEVSIM__GRID_HPP_
