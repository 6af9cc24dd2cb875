#include "aquamon/jsonl.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include "aquamon/errors.hpp"

namespace aquamon {

JsonlWriter::JsonlWriter(const std::string& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw PersistenceFailure("cannot open " + path + " for append: " +
                             std::strerror(errno));
  }
}

JsonlWriter::~JsonlWriter() {
  if (fd_ >= 0) ::close(fd_);
}

void JsonlWriter::append(std::string_view line) {
  std::string buffer;
  buffer.reserve(line.size() + 1);
  buffer.append(line);
  buffer.push_back('\n');

  std::lock_guard<std::mutex> lock(mutex_);
  std::size_t offset = 0;
  while (offset < buffer.size()) {
    const ssize_t n =
        ::write(fd_, buffer.data() + offset, buffer.size() - offset);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw PersistenceFailure("write to " + path_ + " failed: " +
                               std::strerror(errno));
    }
    offset += static_cast<std::size_t>(n);
  }
  ++lines_;
}

std::uint64_t JsonlWriter::lines_written() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return lines_;
}

std::uint64_t for_each_line(const std::string& path,
                            const std::function<void(std::string_view)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PersistenceFailure("cannot open " + path + " for reading");
  std::uint64_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    fn(line);
    ++count;
  }
  return count;
}

}  // namespace aquamon
