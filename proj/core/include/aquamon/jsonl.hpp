#pragma once

#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>

namespace aquamon {

// Append-only line log. Each append issues one write on an O_APPEND
// descriptor while holding a mutex, so records from concurrent senders
// never interleave and a crash can lose at most the line being written.
class JsonlWriter {
 public:
  // Creates the file when missing. Throws PersistenceFailure.
  explicit JsonlWriter(const std::string& path);
  ~JsonlWriter();

  JsonlWriter(const JsonlWriter&) = delete;
  JsonlWriter& operator=(const JsonlWriter&) = delete;

  // Writes line plus a trailing newline. Throws PersistenceFailure when
  // the descriptor rejects the write.
  void append(std::string_view line);

  std::uint64_t lines_written() const;
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  int fd_ = -1;
  mutable std::mutex mutex_;
  std::uint64_t lines_ = 0;
};

// Streams an LF-separated file through fn, one line at a time without the
// terminator, returning the line count. Throws PersistenceFailure when the
// file cannot be opened.
std::uint64_t for_each_line(const std::string& path,
                            const std::function<void(std::string_view)>& fn);

}  // namespace aquamon
