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


#include "bevsim/text.hpp"

#include <charconv>
#include <cmath>

namespace bevsim
{

std::string format_real(double v)
{
  if (v == 0.0) {
    return "0";
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view text)
{
  const char * ws = " \t\r\n";
  auto a = text.find_first_not_of(ws);
  if (a == std::string_view::npos) {
    return {};
  }
  auto b = text.find_last_not_of(ws);
  return text.substr(a, b - a + 1);
}

namespace
{

template<typename T>
T parse_number(std::string_view text, std::string_view what, ErrorCode code)
{
  T value{};
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    fail(code, std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

double parse_real(std::string_view text, std::string_view what, ErrorCode code)
{
  double v = parse_number<double>(text, what, code);
  if (!std::isfinite(v)) {
    fail(code, std::string(what) + ": not finite");
  }
  return v;
}

std::int64_t parse_int(std::string_view text, std::string_view what, ErrorCode code)
{
  return parse_number<std::int64_t>(text, what, code);
}

std::uint64_t parse_uint(std::string_view text, std::string_view what, ErrorCode code)
{
  return parse_number<std::uint64_t>(text, what, code);
}

std::string format_cell(Cell c)
{
  return std::to_string(c.row) + "," + std::to_string(c.col);
}

Cell parse_cell(std::string_view text, std::string_view what, ErrorCode code)
{
  auto parts = split(text, ',');
  if (parts.size() != 2) {
    fail(code, std::string(what) + ": expected row,col, got '" + std::string(text) + "'");
  }
  return {static_cast<int>(parse_int(parts[0], what, code)),
    static_cast<int>(parse_int(parts[1], what, code))};
}

std::vector<std::pair<std::string_view, std::string_view>> parse_fields(std::string_view line,
  ErrorCode code)
{
  std::vector<std::pair<std::string_view, std::string_view>> out;
  for (auto tok : split(trim(line), ' ')) {
    if (tok.empty()) {
      continue;
    }
    auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      fail(code, "malformed field '" + std::string(tok) + "'");
    }
    out.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return out;
}

}  // namespace bevsim
