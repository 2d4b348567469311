#include "reprolint/event_log.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "reprolint/project.hpp"

namespace reprolint {

namespace {

class FdLock {
 public:
  explicit FdLock(const std::filesystem::path& p) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) throw std::runtime_error("cannot open log " + p.string() + ": " + std::strerror(errno));
    while (::flock(fd_, LOCK_EX) != 0) {
      if (errno != EINTR) {
        ::close(fd_);
        throw std::runtime_error("cannot lock log " + p.string());
      }
    }
  }
  ~FdLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FdLock(const FdLock&) = delete;
  FdLock& operator=(const FdLock&) = delete;

  int fd() const { return fd_; }

 private:
  int fd_ = -1;
};

std::vector<std::string> split_tab(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool valid_timestamp(std::string_view ts) {
  // YYYY-MM-DDTHH:MM:SSZ
  if (ts.size() != 20) return false;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const char c = ts[i];
    switch (i) {
      case 4:
      case 7: if (c != '-') return false; break;
      case 10: if (c != 'T') return false; break;
      case 13:
      case 16: if (c != ':') return false; break;
      case 19: if (c != 'Z') return false; break;
      default: if (c < '0' || c > '9') return false;
    }
  }
  auto num = [&](std::size_t at, std::size_t len) { return std::stoi(std::string(ts.substr(at, len))); };
  const int month = num(5, 2), day = num(8, 2);
  return month >= 1 && month <= 12 && day >= 1 && day <= 31 && num(11, 2) <= 23 && num(14, 2) <= 59 &&
         num(17, 2) <= 60;
}

std::string read_all(int fd) {
  std::string out;
  char buf[8192];
  if (::lseek(fd, 0, SEEK_SET) < 0) return out;
  ssize_t n;
  while ((n = ::read(fd, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  return out;
}

// Timestamp of the last well-formed line, empty if none.
std::string last_timestamp(const std::string& content) {
  std::size_t end = content.size();
  while (end > 0) {
    std::size_t nl = content.rfind('\n', end - 1);
    std::size_t begin = nl == std::string::npos ? 0 : nl + 1;
    std::string_view line(content.data() + begin, end - begin);
    if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
    auto fields = split_tab(line);
    if (fields.size() == 4 && valid_timestamp(fields[3])) return fields[3];
    if (nl == std::string::npos) break;
    end = nl;
  }
  return {};
}

}  // namespace

std::filesystem::path log_path(const std::filesystem::path& root) {
  return root / std::string(kStateDir) / "log.tsv";
}

std::string now_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string escape_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
  return out;
}

std::string unescape_field(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: out += s[i];
    }
  }
  return out;
}

void log_append(const std::filesystem::path& root, std::vector<LogEvent> events) {
  if (events.empty()) return;
  const auto path = log_path(root);
  std::filesystem::create_directories(path.parent_path());
  FdLock lock(path);

  const std::string existing = read_all(lock.fd());
  std::string floor = last_timestamp(existing);
  std::string buffer;
  if (existing.empty()) {
    buffer += kLogHeader;
    buffer += '\n';
  } else if (existing.back() != '\n') {
    buffer += '\n';  // a torn line stays isolated
  }
  for (auto& e : events) {
    if (e.func.empty()) throw std::invalid_argument("log event without func");
    if (!valid_timestamp(e.timestamp)) e.timestamp = now_timestamp();
    if (e.timestamp < floor) e.timestamp = floor;
    floor = e.timestamp;
    buffer += escape_field(e.path) + '\t' + escape_field(e.path_abs) + '\t' + escape_field(e.func) +
              '\t' + e.timestamp + '\n';
  }
  // One write keeps concurrent appenders from interleaving partial lines.
  const char* data = buffer.data();
  std::size_t left = buffer.size();
  while (left > 0) {
    ssize_t n = ::write(lock.fd(), data, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw std::runtime_error("cannot write log: " + std::string(std::strerror(errno)));
    }
    data += n;
    left -= static_cast<std::size_t>(n);
  }
}

LogReadResult log_report(const std::filesystem::path& root) {
  LogReadResult out;
  std::ifstream in(log_path(root), std::ios::binary);
  if (!in) return out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (number == 1 && line == kLogHeader) continue;
    if (line.empty()) continue;
    auto fields = split_tab(line);
    if (fields.size() != 4 || fields[2].empty() || !valid_timestamp(fields[3])) {
      out.warnings.push_back("skipping corrupt log line " + std::to_string(number));
      continue;
    }
    out.events.push_back(LogEvent{unescape_field(fields[0]), unescape_field(fields[1]),
                                  unescape_field(fields[2]), fields[3]});
  }
  return out;
}

void log_clear(const std::filesystem::path& root) {
  std::error_code ec;
  std::filesystem::remove(log_path(root), ec);
  if (ec && ec != std::errc::no_such_file_or_directory) {
    throw std::runtime_error("cannot clear log: " + ec.message());
  }
}

}  // namespace reprolint
