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

#ifndef BEVSIM__SSDS_HPP_
#define BEVSIM__SSDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bevsim/bytes.hpp"
#include "bevsim/dataset.hpp"

namespace bevsim
{

/*
 * SSDS dataset file, all integers little-endian.
 *
 *   file header   "SSDS" | u16 version (1) | u32 record_count
 *   index         record_count x ( u32 plan_id | u32 step | u8 query |
 *                                  u64 offset | u32 length )
 *   header crc    u32 CRC-32 of every byte above
 *   records       record_count x record, at the indexed offsets
 *
 *   record        "SREC" | u32 plan_id | u32 step | u8 query |
 *                 i32 pose_row | i32 pose_col | u32 layer_count (27) |
 *                 layer_count x ( u32 blob_length | SEMGRIDv1 blob ) |
 *                 u32 CRC-32 of the record bytes before it
 *
 * Layer order: position, trajectory, obstacles, explored,
 * local_semantics[0..9], masked_gt[0..9], target_mask, loss_weight_mask,
 * gt_labels. All layers except gt_labels hold 0/1 values. `length` in the
 * index covers the record including its CRC.
 */

inline constexpr std::string_view kDatasetMagic = "SSDS";
inline constexpr std::string_view kRecordMagic = "SREC";
inline constexpr std::uint16_t kDatasetVersion = 1;
inline constexpr std::uint32_t kRecordLayers = 27;

struct DatasetIndexEntry
{
  std::uint32_t plan_id = 0;
  std::uint32_t step = 0;
  ClassId query = ClassId::kBedroom;
  std::uint64_t offset = 0;
  std::uint32_t length = 0;
};

/// Encodes records as they arrive; finish() lays out header, index and records.
class DatasetBuilder
{
public:
  void add(const TrainingSample & sample);
  std::size_t size() const {return index_.size();}
  Bytes finish() const;

private:
  std::vector<Bytes> records_;
  std::vector<DatasetIndexEntry> index_;
};

Bytes encode_dataset(std::span<const TrainingSample> samples);
void write_dataset(std::span<const TrainingSample> samples, const std::filesystem::path & path);

/**
 * Random access over an in-memory SSDS image.
 *
 * Errors: kBadMagic / kBadHeader / kTruncated for the file header,
 * kChecksumMismatch for header or record CRC failures (including records cut
 * short, named by index), kCorruptRecord for malformed record contents.
 */
class DatasetReader
{
public:
  static DatasetReader open(const std::filesystem::path & path);
  static DatasetReader from_bytes(Bytes data);

  std::size_t size() const {return index_.size();}
  const DatasetIndexEntry & entry(std::size_t i) const {return index_.at(i);}
  const std::vector<DatasetIndexEntry> & index() const {return index_;}

  TrainingSample read(std::size_t i) const;
  std::optional<std::size_t> find(std::uint32_t plan_id, std::uint32_t step, ClassId query) const;

private:
  DatasetReader() = default;

  Bytes data_;
  std::vector<DatasetIndexEntry> index_;
};

std::vector<TrainingSample> decode_dataset(Bytes data);
std::vector<TrainingSample> read_dataset(const std::filesystem::path & path);

/// Plan-level train/val/test partition.
struct SplitManifest
{
  std::vector<std::uint32_t> train;
  std::vector<std::uint32_t> val;
  std::vector<std::uint32_t> test;

  const std::vector<std::uint32_t> & get(std::string_view name) const;
};

/// Shuffles plan ids with `seed` and cuts round(0.8 n) / round(0.1 n) / rest.
SplitManifest make_split(std::vector<std::uint32_t> plan_ids, std::uint64_t seed,
  double train_fraction = 0.8, double val_fraction = 0.1);
std::string split_text(const SplitManifest & split);
SplitManifest parse_split(std::string_view text);
SplitManifest read_split(const std::filesystem::path & path);

}  // namespace bevsim

#endif  // BEVSIM__SSDS_HPP_
