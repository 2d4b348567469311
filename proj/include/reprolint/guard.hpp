#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reprolint/config.hpp"

namespace reprolint {

inline constexpr std::string_view kSetwdMessage =
    "setwd() is likely to break reproducibility. Use here::here() instead.";

inline constexpr std::string_view kDefaultRunner = "Rscript {script}";

struct GuardIssue {
  int line;
  std::string message;

  bool operator==(const GuardIssue&) const = default;
};

struct GuardVerdict {
  std::string script;  // root-relative
  std::vector<GuardIssue> blocking;
  std::vector<GuardIssue> warnings;

  bool refused() const { return !blocking.empty(); }
  bool operator==(const GuardVerdict&) const = default;
};

class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RunnerNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Statically screens one script before it runs: setwd() calls and
/// absolute or escaping I/O paths block; computed paths only warn. Every
/// I/O and package-load fact is appended to the project log when
/// `write_log` is set.
/// Throws GuardError if the script is unreadable or outside the root.
GuardVerdict guard_scan(const std::filesystem::path& script, const std::filesystem::path& root,
                        const Config& config, bool write_log = true);
GuardVerdict guard_scan(const std::filesystem::path& script, const std::filesystem::path& root);

struct GuardRunResult {
  GuardVerdict verdict;
  bool launched = false;
  int exit_status = 0;  // runner's status; 128+N when killed by signal N
};

/// Runs `runner_template` ("{script}" is replaced by the root-relative
/// script path) from the project root, unless the guard blocks.
/// Throws RunnerNotFound when the runner program cannot be executed.
GuardRunResult guard_run(const std::filesystem::path& script, const std::filesystem::path& root,
                         std::string_view runner_template = kDefaultRunner);

/// Shell-like word splitting with single/double quotes.
std::vector<std::string> split_command(std::string_view command);

/// Copies the project (minus the state directory) to a fresh temporary
/// directory and returns `<tmp>/<project name>`. Nothing is left behind on
/// failure.
std::filesystem::path sandbox(const std::filesystem::path& root);

}  // namespace reprolint
