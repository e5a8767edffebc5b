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

#ifndef BEVSIM__TRANSPORT_HPP_
#define BEVSIM__TRANSPORT_HPP_

#include <span>
#include <string>
#include <string_view>

#include "bevsim/bytes.hpp"

namespace bevsim
{

/// Endpoints are "unix:<path>" or "tcp:<host>:<port>".
struct Endpoint
{
  enum class Kind { kUnix, kTcp };
  Kind kind = Kind::kUnix;
  std::string path;  // unix socket path
  std::string host;
  int port = 0;

  static Endpoint parse(std::string_view text);
  std::string to_string() const;
};

/// Owned stream socket carrying u32-length-prefixed messages.
class Connection
{
public:
  static Connection connect(const Endpoint & endpoint);

  explicit Connection(int fd) noexcept
  : fd_(fd) {}
  Connection(Connection && o) noexcept
  : fd_(o.fd_) {o.fd_ = -1;}
  Connection & operator=(Connection && o) noexcept;
  Connection(const Connection &) = delete;
  Connection & operator=(const Connection &) = delete;
  ~Connection();

  void send_message(std::span<const std::uint8_t> message);
  /// Throws kTransport on EOF or I/O failure.
  Bytes receive_message();

  bool valid() const {return fd_ >= 0;}

private:
  int fd_ = -1;
};

/// Listening socket; port 0 picks a free TCP port.
class Listener
{
public:
  static Listener bind(const Endpoint & endpoint);

  Listener(Listener && o) noexcept
  : fd_(o.fd_), endpoint_(std::move(o.endpoint_)) {o.fd_ = -1;}
  Listener(const Listener &) = delete;
  Listener & operator=(const Listener &) = delete;
  ~Listener();

  Connection accept();
  /// Resolved endpoint, with the bound port filled in.
  const Endpoint & endpoint() const {return endpoint_;}

private:
  Listener(int fd, Endpoint endpoint)
  : fd_(fd), endpoint_(std::move(endpoint)) {}

  int fd_ = -1;
  Endpoint endpoint_;
};

}  // namespace bevsim

#endif  // BEVSIM__TRANSPORT_HPP_
