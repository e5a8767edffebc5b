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

#ifndef BEVSIM__SSP1_HPP_
#define BEVSIM__SSP1_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bevsim/bytes.hpp"
#include "bevsim/explorer.hpp"
#include "bevsim/grid.hpp"

namespace bevsim
{

/*
 * SSP1 predictor protocol, all integers little-endian.
 *
 *   request   "SSP1" | u16 version (1) | u8 msg_type (1) | u8 query |
 *             u32 H | u32 W | 14 layers x H*W u8 (0/1)
 *             layer order: position, trajectory, obstacles, explored,
 *             semantic channels 0..9
 *   response  "SSP1" | u16 version (1) | u8 msg_type (2) | u32 H | u32 W |
 *             10 layers x H*W f32 probabilities, channel order 0..9
 *
 * On a stream connection every message is preceded by a u32 byte length.
 */

inline constexpr std::string_view kProtocolMagic = "SSP1";
inline constexpr std::uint16_t kProtocolVersion = 1;
inline constexpr std::uint8_t kRequestType = 1;
inline constexpr std::uint8_t kResponseType = 2;
inline constexpr int kRequestLayers = 14;
inline constexpr std::size_t kRequestHeaderSize = 16;
inline constexpr std::size_t kResponseHeaderSize = 15;
/// Frames larger than this are refused by the transport.
inline constexpr std::uint32_t kMaxMessageBytes = 1u << 30;

struct Ssp1Request
{
  ClassId query = ClassId::kBedroom;
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> layers;  // kRequestLayers * H * W, layer-major

  std::uint8_t layer(int k, int row, int col) const
  {
    return layers[(static_cast<std::size_t>(k) * static_cast<std::size_t>(height) +
             static_cast<std::size_t>(row)) * static_cast<std::size_t>(width) +
             static_cast<std::size_t>(col)];
  }
};

Bytes encode_request(const ObservationFrame & frame, ClassId query);
/// Errors: kProtocolMagic, kProtocolVersion, kProtocolMessage (type/query), kProtocolShape.
Ssp1Request decode_request(std::span<const std::uint8_t> data);

/// `probs` must have 10 channels with values in [0, 1].
Bytes encode_response(const SemanticGrid & probs);
/// Errors: kProtocolMagic, kProtocolVersion, kProtocolMessage (type or
/// out-of-range values), kProtocolShape (payload length vs declared H, W).
SemanticGrid decode_response(std::span<const std::uint8_t> data);

}  // namespace bevsim

#endif  // BEVSIM__SSP1_HPP_
