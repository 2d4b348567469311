#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace reprolint {

/// One logged I/O or package-load event.
struct LogEvent {
  std::string path;      // argument as written, or "package:<name>"
  std::string path_abs;  // empty unless the path existed when logged
  std::string func;      // qualified function name
  std::string timestamp; // ISO-8601 UTC, second precision: 2020-08-18T18:46:25Z

  bool operator==(const LogEvent&) const = default;
};

inline constexpr const char* kLogHeader = "path\tpath_abs\tfunc\ttimestamp";

/// `<root>/.reprolint/log.tsv`
std::filesystem::path log_path(const std::filesystem::path& root);

/// Current wall-clock time in the log's timestamp format.
std::string now_timestamp();

/// Appends events under an exclusive lock. Timestamps earlier than the
/// last logged one are raised to it so the file stays non-decreasing.
void log_append(const std::filesystem::path& root, std::vector<LogEvent> events);

struct LogReadResult {
  std::vector<LogEvent> events;  // append order
  std::vector<std::string> warnings;  // one per skipped corrupt line
};

/// Missing log reads as empty. Corrupt lines are skipped with a warning.
LogReadResult log_report(const std::filesystem::path& root);

/// Removes the log; succeeds when there is none.
void log_clear(const std::filesystem::path& root);

/// Tab/newline/backslash escaping used for log fields.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

}  // namespace reprolint
