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

#include "bevsim/ssds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bevsim/raster.hpp"
#include "bevsim/rng.hpp"

namespace bevsim
{

namespace
{

constexpr std::size_t kFileHeaderSize = 4 + 2 + 4;
constexpr std::size_t kIndexEntrySize = 4 + 4 + 1 + 8 + 4;
constexpr std::size_t kRecordHeaderSize = 4 + 4 + 4 + 1 + 4 + 4 + 4;

BitMask channel_mask(const SemanticGrid & g, int ch)
{
  BitMask m(g.height(), g.width());
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      m.at(r, c) = g.at(r, c, ch) != 0.0 ? 1 : 0;
    }
  }
  return m;
}

void put_layer(ByteWriter & w, const LabelGrid & layer)
{
  Bytes blob = encode_raster(layer);
  w.u32(static_cast<std::uint32_t>(blob.size()));
  w.raw(blob);
}

Bytes encode_record(const TrainingSample & s)
{
  Bytes out;
  ByteWriter w(out);
  w.raw(kRecordMagic);
  w.u32(s.plan_id);
  w.u32(static_cast<std::uint32_t>(s.frame.step));
  w.u8(static_cast<std::uint8_t>(s.query));
  w.i32(s.frame.pose.row);
  w.i32(s.frame.pose.col);
  w.u32(kRecordLayers);

  BitMask position(s.gt.height(), s.gt.width());
  if (position.contains(s.frame.pose)) {
    position[s.frame.pose] = 1;
  }
  put_layer(w, mask_to_layer(position));
  put_layer(w, mask_to_layer(s.frame.trajectory));
  put_layer(w, mask_to_layer(s.frame.obstacles_seen));
  put_layer(w, mask_to_layer(s.frame.explored));
  for (int k = 0; k < kNumClasses; ++k) {
    put_layer(w, mask_to_layer(channel_mask(s.frame.local_semantics, k)));
  }
  for (int k = 0; k < kNumClasses; ++k) {
    put_layer(w, mask_to_layer(channel_mask(s.masked_gt, k)));
  }
  put_layer(w, mask_to_layer(s.target_mask));
  put_layer(w, mask_to_layer(s.loss_weight_mask));
  put_layer(w, s.gt);
  w.u32(crc32(out));
  return out;
}

std::string record_name(std::size_t i)
{
  return "record " + std::to_string(i);
}

}  // namespace

void DatasetBuilder::add(const TrainingSample & sample)
{
  records_.push_back(encode_record(sample));
  index_.push_back({sample.plan_id, static_cast<std::uint32_t>(sample.frame.step), sample.query,
      0, static_cast<std::uint32_t>(records_.back().size())});
}

Bytes DatasetBuilder::finish() const
{
  Bytes out;
  ByteWriter w(out);
  w.raw(kDatasetMagic);
  w.u16(kDatasetVersion);
  w.u32(static_cast<std::uint32_t>(index_.size()));
  std::uint64_t offset = kFileHeaderSize + kIndexEntrySize * index_.size() + 4;
  for (const auto & e : index_) {
    w.u32(e.plan_id);
    w.u32(e.step);
    w.u8(static_cast<std::uint8_t>(e.query));
    w.u64(offset);
    w.u32(e.length);
    offset += e.length;
  }
  w.u32(crc32(out));
  for (const auto & rec : records_) {
    w.raw(rec);
  }
  return out;
}

Bytes encode_dataset(std::span<const TrainingSample> samples)
{
  DatasetBuilder builder;
  for (const auto & s : samples) {
    builder.add(s);
  }
  return builder.finish();
}

void write_dataset(std::span<const TrainingSample> samples, const std::filesystem::path & path)
{
  write_file(path, encode_dataset(samples));
}

DatasetReader DatasetReader::open(const std::filesystem::path & path)
{
  return from_bytes(read_file(path));
}

DatasetReader DatasetReader::from_bytes(Bytes data)
{
  DatasetReader reader;
  reader.data_ = std::move(data);
  const Bytes & d = reader.data_;
  if (d.size() < kDatasetMagic.size() ||
    !std::equal(kDatasetMagic.begin(), kDatasetMagic.end(), d.begin()))
  {
    fail(ErrorCode::kBadMagic, "not an SSDS dataset");
  }
  ByteReader in(d, ErrorCode::kTruncated, "dataset header");
  in.take(4);
  auto version = in.u16();
  if (version != kDatasetVersion) {
    fail(ErrorCode::kBadHeader, "unsupported SSDS version " + std::to_string(version));
  }
  auto count = in.u32();
  if (static_cast<std::uint64_t>(count) * kIndexEntrySize > d.size()) {
    fail(ErrorCode::kTruncated, "index of " + std::to_string(count) + " records exceeds file");
  }
  reader.index_.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    DatasetIndexEntry e;
    e.plan_id = in.u32();
    e.step = in.u32();
    auto q = in.u8();
    e.offset = in.u64();
    e.length = in.u32();
    if (q >= kNumQueryClasses) {
      fail(ErrorCode::kBadHeader, "index entry " + std::to_string(i) + " has query " +
        std::to_string(q));
    }
    e.query = static_cast<ClassId>(q);
    reader.index_.push_back(e);
  }
  auto covered = in.position();
  auto stored = in.u32();
  if (crc32(std::span(d).first(covered)) != stored) {
    fail(ErrorCode::kChecksumMismatch, "dataset header/index checksum mismatch");
  }
  return reader;
}

TrainingSample DatasetReader::read(std::size_t i) const
{
  const DatasetIndexEntry & e = index_.at(i);
  const std::string name = record_name(i);
  if (e.length < kRecordHeaderSize + 4) {
    fail(ErrorCode::kCorruptRecord, name + ": length " + std::to_string(e.length) + " too small");
  }
  const bool truncated = e.offset > data_.size() || data_.size() - e.offset < e.length;
  auto available = truncated ?
    std::span<const std::uint8_t>(data_).subspan(std::min<std::uint64_t>(e.offset, data_.size())) :
    std::span<const std::uint8_t>(data_).subspan(e.offset, e.length);

  if (available.size() >= kRecordHeaderSize) {
    ByteReader head(available, ErrorCode::kCorruptRecord, name);
    if (!head.match(kRecordMagic)) {
      fail(ErrorCode::kCorruptRecord, name + ": bad record tag");
    }
    auto plan_id = head.u32();
    auto step = head.u32();
    auto query = head.u8();
    head.i32();
    head.i32();
    auto layers = head.u32();
    if (plan_id != e.plan_id || step != e.step || query != static_cast<std::uint8_t>(e.query)) {
      fail(ErrorCode::kCorruptRecord, name + ": header disagrees with index");
    }
    if (layers != kRecordLayers) {
      fail(ErrorCode::kCorruptRecord, name + ": layer count " + std::to_string(layers));
    }
  }
  if (truncated) {
    fail(ErrorCode::kChecksumMismatch, name + ": truncated (" + std::to_string(available.size()) +
      " of " + std::to_string(e.length) + " bytes), checksum unverifiable");
  }
  ByteReader tail(available.last(4), ErrorCode::kCorruptRecord, name);
  if (crc32(available.first(available.size() - 4)) != tail.u32()) {
    fail(ErrorCode::kChecksumMismatch, name + ": checksum mismatch");
  }

  ByteReader in(available.first(available.size() - 4), ErrorCode::kCorruptRecord, name);
  in.take(4);
  TrainingSample s;
  s.plan_id = in.u32();
  s.frame.step = static_cast<int>(in.u32());
  s.query = static_cast<ClassId>(in.u8());
  s.frame.pose.row = in.i32();
  s.frame.pose.col = in.i32();
  in.u32();

  std::vector<LabelGrid> layers;
  layers.reserve(kRecordLayers);
  for (std::uint32_t k = 0; k < kRecordLayers; ++k) {
    auto len = in.u32();
    auto blob = in.take(len);
    try {
      layers.push_back(decode_raster(blob));
    } catch (const Error & err) {
      fail(ErrorCode::kCorruptRecord, name + ": layer " + std::to_string(k) + ": " + err.what());
    }
    if (!layers.back().same_shape(layers.front())) {
      fail(ErrorCode::kCorruptRecord, name + ": layer " + std::to_string(k) + " shape differs");
    }
  }
  if (in.remaining() != 0) {
    fail(ErrorCode::kCorruptRecord, name + ": " + std::to_string(in.remaining()) +
      " unexpected bytes before checksum");
  }

  try {
    const int h = layers[0].height();
    const int w = layers[0].width();
    BitMask position = layer_to_mask(layers[0]);
    if (!position.contains(s.frame.pose) || !position[s.frame.pose] || count_set(position) != 1) {
      fail(ErrorCode::kCorruptRecord, name + ": position layer disagrees with pose");
    }
    s.frame.trajectory = layer_to_mask(layers[1]);
    s.frame.obstacles_seen = layer_to_mask(layers[2]);
    s.frame.explored = layer_to_mask(layers[3]);
    s.frame.local_semantics = SemanticGrid(h, w, kNumClasses);
    s.masked_gt = SemanticGrid(h, w, kNumClasses);
    for (int k = 0; k < kNumClasses; ++k) {
      BitMask local = layer_to_mask(layers[4 + static_cast<std::size_t>(k)]);
      BitMask masked = layer_to_mask(layers[14 + static_cast<std::size_t>(k)]);
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          s.frame.local_semantics.at(r, c, k) = local.at(r, c);
          s.masked_gt.at(r, c, k) = masked.at(r, c);
        }
      }
    }
    s.target_mask = layer_to_mask(layers[24]);
    s.loss_weight_mask = layer_to_mask(layers[25]);
  } catch (const Error & err) {
    if (err.code() == ErrorCode::kCorruptRecord) {
      throw;
    }
    fail(ErrorCode::kCorruptRecord, name + ": " + err.what());
  }
  s.gt = std::move(layers[26]);
  return s;
}

std::optional<std::size_t> DatasetReader::find(std::uint32_t plan_id, std::uint32_t step,
  ClassId query) const
{
  for (std::size_t i = 0; i < index_.size(); ++i) {
    const auto & e = index_[i];
    if (e.plan_id == plan_id && e.step == step && e.query == query) {
      return i;
    }
  }
  return std::nullopt;
}

std::vector<TrainingSample> decode_dataset(Bytes data)
{
  DatasetReader reader = DatasetReader::from_bytes(std::move(data));
  std::vector<TrainingSample> out;
  out.reserve(reader.size());
  for (std::size_t i = 0; i < reader.size(); ++i) {
    out.push_back(reader.read(i));
  }
  return out;
}

std::vector<TrainingSample> read_dataset(const std::filesystem::path & path)
{
  return decode_dataset(read_file(path));
}

const std::vector<std::uint32_t> & SplitManifest::get(std::string_view name) const
{
  if (name == "train") {return train;}
  if (name == "val") {return val;}
  if (name == "test") {return test;}
  fail(ErrorCode::kInvalidArgument, "unknown split '" + std::string(name) + "'");
}

SplitManifest make_split(std::vector<std::uint32_t> plan_ids, std::uint64_t seed,
  double train_fraction, double val_fraction)
{
  if (train_fraction < 0 || val_fraction < 0 || train_fraction + val_fraction > 1.0) {
    fail(ErrorCode::kConfig, "split fractions must be non-negative and sum to <= 1");
  }
  std::sort(plan_ids.begin(), plan_ids.end());
  plan_ids.erase(std::unique(plan_ids.begin(), plan_ids.end()), plan_ids.end());
  Rng rng(seed);
  rng.shuffle(std::span<std::uint32_t>(plan_ids));
  const auto n = plan_ids.size();
  auto n_train = std::min(n, static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n))));
  auto n_val = std::min(n - n_train,
      static_cast<std::size_t>(std::llround(val_fraction * static_cast<double>(n))));
  SplitManifest split;
  split.train.assign(plan_ids.begin(), plan_ids.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.val.assign(plan_ids.begin() + static_cast<std::ptrdiff_t>(n_train),
    plan_ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  split.test.assign(plan_ids.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), plan_ids.end());
  for (auto * part : {&split.train, &split.val, &split.test}) {
    std::sort(part->begin(), part->end());
  }
  return split;
}

std::string split_text(const SplitManifest & split)
{
  std::ostringstream out;
  auto line = [&](const char * name, const std::vector<std::uint32_t> & ids) {
      out << name << "=";
      for (std::size_t i = 0; i < ids.size(); ++i) {
        out << (i ? "," : "") << ids[i];
      }
      out << "\n";
    };
  line("train", split.train);
  line("val", split.val);
  line("test", split.test);
  return out.str();
}

SplitManifest parse_split(std::string_view text)
{
  SplitManifest split;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::kConfig, "split manifest line without '=': " + line);
    }
    auto key = line.substr(0, eq);
    std::vector<std::uint32_t> * target = nullptr;
    if (key == "train") {target = &split.train;}
    else if (key == "val") {target = &split.val;}
    else if (key == "test") {target = &split.test;}
    else {
      fail(ErrorCode::kConfig, "unknown split '" + key + "'");
    }
    std::istringstream ids(line.substr(eq + 1));
    std::string tok;
    while (std::getline(ids, tok, ',')) {
      if (!tok.empty()) {
        target->push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      }
    }
  }
  return split;
}

SplitManifest read_split(const std::filesystem::path & path)
{
  Bytes data = read_file(path);
  return parse_split(std::string_view(reinterpret_cast<const char *>(data.data()), data.size()));
}

}  // namespace bevsim
