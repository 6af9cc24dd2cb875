#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>

namespace aquamon {

struct Endpoint {
  std::string host;
  std::uint16_t port = 0;

  bool operator==(const Endpoint&) const = default;
};

// Splits "host:port" at the last colon. Throws ConfigError when the host is
// empty or the port is not a decimal in [0, 65535].
Endpoint parse_endpoint(std::string_view text);
std::string to_string(const Endpoint& endpoint);

// Thin RAII wrapper over a connected socket.
class TcpStream {
 public:
  TcpStream() = default;
  explicit TcpStream(int fd) : fd_(fd) {}
  TcpStream(TcpStream&& other) noexcept;
  TcpStream& operator=(TcpStream&& other) noexcept;
  TcpStream(const TcpStream&) = delete;
  TcpStream& operator=(const TcpStream&) = delete;
  ~TcpStream();

  // Throws ConnectionRefused with the endpoint on any connect failure.
  static TcpStream connect(const Endpoint& endpoint);

  bool valid() const { return fd_ >= 0; }
  int fd() const { return fd_; }

  // Writes all bytes; throws TransportError when the peer is gone.
  void send_all(std::string_view data);
  // Reads up to len bytes; returns 0 on orderly EOF. Throws TransportError.
  std::size_t recv_some(char* buf, std::size_t len);

  void close();

 private:
  int fd_ = -1;
};

class TcpListener {
 public:
  // Binds and listens; throws BindFailure naming the endpoint.
  explicit TcpListener(const Endpoint& endpoint, int backlog = 64);
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  // The bound address, with any ephemeral port resolved.
  Endpoint local_endpoint() const;

  // Waits up to timeout_ms for a connection; nullopt on timeout.
  std::optional<TcpStream> accept(int timeout_ms);

 private:
  int fd_ = -1;
  Endpoint bound_;
};

// True when fd is readable within timeout_ms; false on timeout.
bool wait_readable(int fd, int timeout_ms);

// Incremental LF splitter for a byte stream. Lines longer than max_line are
// truncated to max_line and surfaced as a single oversized line (so the
// frame parser can reject them); the remainder up to the next LF is
// discarded. Does no I/O of its own.
class LineReader {
 public:
  explicit LineReader(std::size_t max_line = 4096) : max_line_(max_line) {}

  void feed(const char* data, std::size_t len);
  // Next complete line, LF (and any preceding CR) stripped.
  std::optional<std::string> next_line();
  // A final unterminated line after EOF, when non-empty.
  std::optional<std::string> take_tail();

 private:
  std::size_t max_line_;
  std::string buffer_;
  std::deque<std::string> ready_;
  bool discarding_ = false;
};

}  // namespace aquamon
