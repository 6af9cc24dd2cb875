#include "aquamon/net.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <utility>

#include "aquamon/errors.hpp"

namespace aquamon {
namespace {

Endpoint endpoint_of_sockaddr(const sockaddr* addr, socklen_t len) {
  char host[NI_MAXHOST];
  char service[NI_MAXSERV];
  Endpoint endpoint;
  if (::getnameinfo(addr, len, host, sizeof host, service, sizeof service,
                    NI_NUMERICHOST | NI_NUMERICSERV) == 0) {
    endpoint.host = host;
    endpoint.port = static_cast<std::uint16_t>(std::atoi(service));
  }
  return endpoint;
}

struct AddrInfoList {
  addrinfo* head = nullptr;
  ~AddrInfoList() {
    if (head) ::freeaddrinfo(head);
  }
};

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

}  // namespace

Endpoint parse_endpoint(std::string_view text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string_view::npos || colon == 0)
    throw ConfigError("endpoint must be host:port, got \"" +
                      std::string(text) + "\"");
  const std::string_view host = text.substr(0, colon);
  const std::string_view port_text = text.substr(colon + 1);
  if (port_text.empty() || port_text.size() > 5)
    throw ConfigError("endpoint port is invalid in \"" + std::string(text) +
                      "\"");
  unsigned port = 0;
  for (char c : port_text) {
    if (c < '0' || c > '9')
      throw ConfigError("endpoint port is invalid in \"" +
                        std::string(text) + "\"");
    port = port * 10 + static_cast<unsigned>(c - '0');
  }
  if (port > 65535)
    throw ConfigError("endpoint port is invalid in \"" + std::string(text) +
                      "\"");
  return Endpoint{std::string(host), static_cast<std::uint16_t>(port)};
}

std::string to_string(const Endpoint& endpoint) {
  return endpoint.host + ":" + std::to_string(endpoint.port);
}

TcpStream::TcpStream(TcpStream&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)) {}

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

TcpStream::~TcpStream() { close(); }

void TcpStream::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

TcpStream TcpStream::connect(const Endpoint& endpoint) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  AddrInfoList results;
  const std::string port = std::to_string(endpoint.port);
  const int rc =
      ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &results.head);
  if (rc != 0) {
    throw ConnectionRefused("cannot resolve " + to_string(endpoint) + ": " +
                            ::gai_strerror(rc));
  }
  int last_errno = ECONNREFUSED;
  for (addrinfo* ai = results.head; ai; ai = ai->ai_next) {
    const int fd =
        ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      set_nodelay(fd);
      return TcpStream(fd);
    }
    last_errno = errno;
    ::close(fd);
  }
  throw ConnectionRefused("connect to " + to_string(endpoint) + " failed: " +
                          std::strerror(last_errno));
}

void TcpStream::send_all(std::string_view data) {
  std::size_t offset = 0;
  while (offset < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + offset, data.size() - offset,
                             MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw TransportError(std::string("send failed: ") +
                           std::strerror(errno));
    }
    offset += static_cast<std::size_t>(n);
  }
}

std::size_t TcpStream::recv_some(char* buf, std::size_t len) {
  while (true) {
    const ssize_t n = ::recv(fd_, buf, len, 0);
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno == EINTR) continue;
    throw TransportError(std::string("recv failed: ") + std::strerror(errno));
  }
}

TcpListener::TcpListener(const Endpoint& endpoint, int backlog) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  AddrInfoList results;
  const std::string port = std::to_string(endpoint.port);
  const int rc =
      ::getaddrinfo(endpoint.host.c_str(), port.c_str(), &hints, &results.head);
  if (rc != 0) {
    throw BindFailure("cannot resolve " + to_string(endpoint) + ": " +
                      ::gai_strerror(rc));
  }
  int last_errno = EINVAL;
  for (addrinfo* ai = results.head; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family,
                            ai->ai_socktype | SOCK_CLOEXEC | SOCK_NONBLOCK,
                            ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 &&
        ::listen(fd, backlog) == 0) {
      fd_ = fd;
      sockaddr_storage bound{};
      socklen_t bound_len = sizeof bound;
      if (::getsockname(fd, reinterpret_cast<sockaddr*>(&bound),
                        &bound_len) == 0) {
        bound_ = endpoint_of_sockaddr(reinterpret_cast<sockaddr*>(&bound),
                                      bound_len);
      }
      return;
    }
    last_errno = errno;
    ::close(fd);
  }
  throw BindFailure("cannot bind " + to_string(endpoint) + ": " +
                    std::strerror(last_errno));
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

Endpoint TcpListener::local_endpoint() const { return bound_; }

std::optional<TcpStream> TcpListener::accept(int timeout_ms) {
  if (!wait_readable(fd_, timeout_ms)) return std::nullopt;
  const int fd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
  if (fd < 0) return std::nullopt;
  return TcpStream(fd);
}

bool wait_readable(int fd, int timeout_ms) {
  pollfd pfd{fd, POLLIN, 0};
  const int rc = ::poll(&pfd, 1, timeout_ms);
  if (rc <= 0) return false;
  return (pfd.revents & (POLLIN | POLLHUP | POLLERR)) != 0;
}

void LineReader::feed(const char* data, std::size_t len) {
  std::size_t i = 0;
  while (i < len) {
    const auto* nl = static_cast<const char*>(
        std::memchr(data + i, '\n', len - i));
    if (discarding_) {
      if (!nl) return;
      i = static_cast<std::size_t>(nl - data) + 1;
      discarding_ = false;
      continue;
    }
    const std::size_t stop =
        nl ? static_cast<std::size_t>(nl - data) : len;
    const std::size_t room = max_line_ - buffer_.size();
    const std::size_t take = std::min(stop - i, room);
    buffer_.append(data + i, take);
    i += take;
    if (i < stop) {
      // Overlong line: surface what fits, drop the rest up to its LF.
      ready_.push_back(std::move(buffer_));
      buffer_.clear();
      discarding_ = true;
      continue;
    }
    if (nl) {
      if (!buffer_.empty() && buffer_.back() == '\r') buffer_.pop_back();
      ready_.push_back(std::move(buffer_));
      buffer_.clear();
      i = stop + 1;
    }
  }
}

std::optional<std::string> LineReader::next_line() {
  if (ready_.empty()) return std::nullopt;
  std::string line = std::move(ready_.front());
  ready_.pop_front();
  return line;
}

std::optional<std::string> LineReader::take_tail() {
  if (discarding_ || buffer_.empty()) {
    discarding_ = false;
    buffer_.clear();
    return std::nullopt;
  }
  if (buffer_.back() == '\r') buffer_.pop_back();
  std::string tail = std::move(buffer_);
  buffer_.clear();
  if (tail.empty()) return std::nullopt;
  return tail;
}

}  // namespace aquamon
