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

#include "bevsim/ssp1.hpp"

#include <cmath>
#include <tuple>

namespace bevsim
{

namespace
{

// Magic, version and message type shared by both directions.
void read_preamble(ByteReader & in, std::uint8_t expected_type)
{
  if (!in.match(kProtocolMagic)) {
    fail(ErrorCode::kProtocolMagic, "bad SSP1 magic");
  }
  auto version = in.u16();
  if (version != kProtocolVersion) {
    fail(ErrorCode::kProtocolVersion, "SSP1 version " + std::to_string(version) + ", expected " +
      std::to_string(kProtocolVersion));
  }
  auto type = in.u8();
  if (type != expected_type) {
    fail(ErrorCode::kProtocolMessage, "SSP1 msg_type " + std::to_string(type) + ", expected " +
      std::to_string(expected_type));
  }
}

std::pair<int, int> read_dims(ByteReader & in)
{
  auto h = in.u32();
  auto w = in.u32();
  if (h == 0 || w == 0 || h > 1u << 15 || w > 1u << 15) {
    fail(ErrorCode::kProtocolShape, "SSP1 dimensions " + std::to_string(h) + "x" +
      std::to_string(w) + " out of range");
  }
  return {static_cast<int>(h), static_cast<int>(w)};
}

}  // namespace

Bytes encode_request(const ObservationFrame & frame, ClassId query)
{
  const int h = frame.explored.height();
  const int w = frame.explored.width();
  Bytes out;
  out.reserve(kRequestHeaderSize + static_cast<std::size_t>(kRequestLayers) * frame.explored.size());
  ByteWriter wr(out);
  wr.raw(kProtocolMagic);
  wr.u16(kProtocolVersion);
  wr.u8(kRequestType);
  wr.u8(static_cast<std::uint8_t>(query));
  wr.u32(static_cast<std::uint32_t>(h));
  wr.u32(static_cast<std::uint32_t>(w));
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      wr.u8(frame.pose == Cell{r, c} ? 1 : 0);
    }
  }
  for (const BitMask * m : {&frame.trajectory, &frame.obstacles_seen, &frame.explored}) {
    for (auto v : m->values()) {
      wr.u8(v ? 1 : 0);
    }
  }
  for (int k = 0; k < kNumClasses; ++k) {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        wr.u8(frame.local_semantics.at(r, c, k) != 0.0 ? 1 : 0);
      }
    }
  }
  return out;
}

Ssp1Request decode_request(std::span<const std::uint8_t> data)
{
  ByteReader in(data, ErrorCode::kProtocolShape, "SSP1 request");
  read_preamble(in, kRequestType);
  Ssp1Request req;
  auto q = in.u8();
  if (q >= kNumQueryClasses) {
    fail(ErrorCode::kProtocolMessage, "SSP1 query " + std::to_string(q) + " is not a room class");
  }
  req.query = static_cast<ClassId>(q);
  std::tie(req.height, req.width) = read_dims(in);
  auto expected = static_cast<std::size_t>(kRequestLayers) * static_cast<std::size_t>(req.height) *
    static_cast<std::size_t>(req.width);
  if (in.remaining() != expected) {
    fail(ErrorCode::kProtocolShape, "SSP1 request payload " + std::to_string(in.remaining()) +
      " bytes, expected " + std::to_string(expected));
  }
  auto payload = in.take(expected);
  req.layers.assign(payload.begin(), payload.end());
  for (auto v : req.layers) {
    if (v > 1) {
      fail(ErrorCode::kProtocolMessage, "SSP1 request layer value " + std::to_string(v));
    }
  }
  return req;
}

Bytes encode_response(const SemanticGrid & probs)
{
  if (probs.channels() != kNumClasses) {
    fail(ErrorCode::kProtocolShape, "response needs 10 channels");
  }
  Bytes out;
  ByteWriter wr(out);
  wr.raw(kProtocolMagic);
  wr.u16(kProtocolVersion);
  wr.u8(kResponseType);
  wr.u32(static_cast<std::uint32_t>(probs.height()));
  wr.u32(static_cast<std::uint32_t>(probs.width()));
  for (int k = 0; k < kNumClasses; ++k) {
    for (int r = 0; r < probs.height(); ++r) {
      for (int c = 0; c < probs.width(); ++c) {
        wr.f32(static_cast<float>(probs.at(r, c, k)));
      }
    }
  }
  return out;
}

SemanticGrid decode_response(std::span<const std::uint8_t> data)
{
  ByteReader in(data, ErrorCode::kProtocolShape, "SSP1 response");
  read_preamble(in, kResponseType);
  auto [h, w] = read_dims(in);
  auto expected = static_cast<std::size_t>(kNumClasses) * static_cast<std::size_t>(h) *
    static_cast<std::size_t>(w) * 4;
  if (in.remaining() != expected) {
    fail(ErrorCode::kProtocolShape, "SSP1 response payload " + std::to_string(in.remaining()) +
      " bytes, expected " + std::to_string(expected) + " for " + std::to_string(h) + "x" +
      std::to_string(w));
  }
  SemanticGrid probs(h, w, kNumClasses);
  for (int k = 0; k < kNumClasses; ++k) {
    for (int r = 0; r < h; ++r) {
      for (int c = 0; c < w; ++c) {
        float v = in.f32();
        if (!(v >= 0.0f && v <= 1.0f)) {
          fail(ErrorCode::kProtocolMessage, "SSP1 probability out of [0, 1]");
        }
        probs.at(r, c, k) = static_cast<double>(v);
      }
    }
  }
  return probs;
}

}  // namespace bevsim
