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

#include "bevsim/transport.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "bevsim/ssp1.hpp"

namespace bevsim
{

namespace
{

[[noreturn]] void transport_error(const std::string & what)
{
  fail(ErrorCode::kTransport, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::uint8_t * data, std::size_t n)
{
  while (n > 0) {
    ssize_t k = ::send(fd, data, n, MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) {
        continue;
      }
      transport_error("send");
    }
    data += k;
    n -= static_cast<std::size_t>(k);
  }
}

void read_all(int fd, std::uint8_t * data, std::size_t n)
{
  while (n > 0) {
    ssize_t k = ::recv(fd, data, n, 0);
    if (k < 0) {
      if (errno == EINTR) {
        continue;
      }
      transport_error("recv");
    }
    if (k == 0) {
      fail(ErrorCode::kTransport, "connection closed by peer");
    }
    data += k;
    n -= static_cast<std::size_t>(k);
  }
}

sockaddr_un unix_address(const std::string & path)
{
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (path.size() >= sizeof(addr.sun_path)) {
    fail(ErrorCode::kTransport, "unix socket path too long: " + path);
  }
  std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
  return addr;
}

}  // namespace

Endpoint Endpoint::parse(std::string_view text)
{
  Endpoint ep;
  if (text.rfind("unix:", 0) == 0) {
    ep.kind = Kind::kUnix;
    ep.path = std::string(text.substr(5));
    if (ep.path.empty()) {
      fail(ErrorCode::kConfig, "endpoint: empty unix socket path");
    }
    return ep;
  }
  if (text.rfind("tcp:", 0) == 0) {
    auto rest = text.substr(4);
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      fail(ErrorCode::kConfig, "endpoint: expected tcp:<host>:<port>");
    }
    ep.kind = Kind::kTcp;
    ep.host = std::string(rest.substr(0, colon));
    try {
      ep.port = std::stoi(std::string(rest.substr(colon + 1)));
    } catch (const std::exception &) {
      fail(ErrorCode::kConfig, "endpoint: bad port in '" + std::string(text) + "'");
    }
    if (ep.port < 0 || ep.port > 65535) {
      fail(ErrorCode::kConfig, "endpoint: port out of range");
    }
    return ep;
  }
  fail(ErrorCode::kConfig, "endpoint: expected unix:<path> or tcp:<host>:<port>, got '" +
    std::string(text) + "'");
}

std::string Endpoint::to_string() const
{
  return kind == Kind::kUnix ? "unix:" + path : "tcp:" + host + ":" + std::to_string(port);
}

Connection Connection::connect(const Endpoint & endpoint)
{
  if (endpoint.kind == Endpoint::Kind::kUnix) {
    int fd = ::socket(AF_UNIX, SOCK_STREAM, 0);
    if (fd < 0) {
      transport_error("socket");
    }
    Connection conn(fd);
    auto addr = unix_address(endpoint.path);
    if (::connect(fd, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0) {
      transport_error("connect " + endpoint.to_string());
    }
    return conn;
  }

  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo * res = nullptr;
  auto port = std::to_string(endpoint.port);
  if (int rc = ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &res); rc != 0) {
    fail(ErrorCode::kTransport, "resolve " + endpoint.host + ": " + ::gai_strerror(rc));
  }
  for (addrinfo * ai = res; ai; ai = ai->ai_next) {
    int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      ::freeaddrinfo(res);
      int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
      return Connection(fd);
    }
    ::close(fd);
  }
  ::freeaddrinfo(res);
  transport_error("connect " + endpoint.to_string());
}

Connection & Connection::operator=(Connection && o) noexcept
{
  if (this != &o) {
    if (fd_ >= 0) {
      ::close(fd_);
    }
    fd_ = o.fd_;
    o.fd_ = -1;
  }
  return *this;
}

Connection::~Connection()
{
  if (fd_ >= 0) {
    ::close(fd_);
  }
}

void Connection::send_message(std::span<const std::uint8_t> message)
{
  if (message.size() > kMaxMessageBytes) {
    fail(ErrorCode::kTransport, "message of " + std::to_string(message.size()) + " bytes too large");
  }
  Bytes prefix;
  ByteWriter(prefix).u32(static_cast<std::uint32_t>(message.size()));
  write_all(fd_, prefix.data(), prefix.size());
  write_all(fd_, message.data(), message.size());
}

Bytes Connection::receive_message()
{
  std::uint8_t prefix[4];
  read_all(fd_, prefix, sizeof(prefix));
  std::uint32_t n = ByteReader(prefix, ErrorCode::kTransport, "length prefix").u32();
  if (n > kMaxMessageBytes) {
    fail(ErrorCode::kTransport, "announced message of " + std::to_string(n) + " bytes too large");
  }
  Bytes message(n);
  read_all(fd_, message.data(), message.size());
  return message;
}

Listener Listener::bind(const Endpoint & endpoint)
{
  Endpoint resolved = endpoint;
  int fd = -1;
  if (endpoint.kind == Endpoint::Kind::kUnix) {
    fd = ::socket(AF_UNIX, SOCK_STREAM, 0);
    if (fd < 0) {
      transport_error("socket");
    }
    auto addr = unix_address(endpoint.path);
    ::unlink(endpoint.path.c_str());
    if (::bind(fd, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0) {
      ::close(fd);
      transport_error("bind " + endpoint.to_string());
    }
  } else {
    fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) {
      transport_error("socket");
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(endpoint.port));
    if (::inet_pton(AF_INET, endpoint.host == "localhost" ? "127.0.0.1" : endpoint.host.c_str(),
      &addr.sin_addr) != 1)
    {
      ::close(fd);
      fail(ErrorCode::kTransport, "listener needs a numeric IPv4 host, got " + endpoint.host);
    }
    if (::bind(fd, reinterpret_cast<sockaddr *>(&addr), sizeof(addr)) != 0) {
      ::close(fd);
      transport_error("bind " + endpoint.to_string());
    }
    socklen_t len = sizeof(addr);
    ::getsockname(fd, reinterpret_cast<sockaddr *>(&addr), &len);
    resolved.port = ntohs(addr.sin_port);
  }
  if (::listen(fd, 8) != 0) {
    ::close(fd);
    transport_error("listen");
  }
  return Listener(fd, resolved);
}

Listener::~Listener()
{
  if (fd_ >= 0) {
    ::close(fd_);
    if (endpoint_.kind == Endpoint::Kind::kUnix) {
      ::unlink(endpoint_.path.c_str());
    }
  }
}

Connection Listener::accept()
{
  while (true) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) {
      return Connection(fd);
    }
    if (errno != EINTR) {
      transport_error("accept");
    }
  }
}

}  // namespace bevsim
