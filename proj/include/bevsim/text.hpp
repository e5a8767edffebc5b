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


#ifndef BEVSIM__TEXT_HPP_
#define BEVSIM__TEXT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bevsim/grid.hpp"

namespace bevsim
{

/// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

/// Splits on `sep`, keeping empty fields.
std::vector<std::string_view> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

/// Strict parsers; the whole field must be consumed. Throw `code` naming `what`.
double parse_real(std::string_view text, std::string_view what, ErrorCode code = ErrorCode::kConfig);
std::int64_t parse_int(std::string_view text, std::string_view what,
  ErrorCode code = ErrorCode::kConfig);
std::uint64_t parse_uint(std::string_view text, std::string_view what,
  ErrorCode code = ErrorCode::kConfig);

/// "r,c"
std::string format_cell(Cell c);
Cell parse_cell(std::string_view text, std::string_view what, ErrorCode code = ErrorCode::kConfig);

/// Space-separated key=value tokens in order of appearance.
std::vector<std::pair<std::string_view, std::string_view>> parse_fields(std::string_view line,
  ErrorCode code);

}  // namespace bevsim

#endif  // BEVSIM__TEXT_HPP_
