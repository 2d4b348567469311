#include "reprolint/guard.hpp"

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "reprolint/event_log.hpp"
#include "reprolint/paths.hpp"
#include "reprolint/scanner.hpp"

namespace reprolint {

namespace fs = std::filesystem;

namespace {

std::string relative_to_root(const fs::path& script, const fs::path& root) {
  const auto abs_root = fs::weakly_canonical(fs::absolute(root));
  std::error_code ec;
  const bool from_root = script.is_relative() && !fs::exists(script, ec) && fs::exists(abs_root / script, ec);
  const auto abs_script = fs::weakly_canonical(from_root ? abs_root / script : fs::absolute(script));
  const auto rel = abs_script.lexically_relative(abs_root);
  const std::string s = rel.generic_string();
  if (rel.empty() || s == "." || s.starts_with("..")) {
    throw GuardError("script is outside the project: " + script.string());
  }
  return s;
}

// Where a literal points on this machine, if it exists there.
std::string local_absolute(const fs::path& root, const std::string& script, const PathRef& ref) {
  std::error_code ec;
  fs::path candidate;
  if (path_kind(ref.literal) == PathKind::Absolute) {
    if (ref.literal.starts_with('~')) {
      const char* home = std::getenv("HOME");
      if (!home || !(ref.literal.size() == 1 || ref.literal[1] == '/')) return {};
      candidate = fs::path(home) / ref.literal.substr(std::min<std::size_t>(2, ref.literal.size()));
    } else {
      candidate = ref.literal;
    }
  } else {
    candidate = root / (ref.root_anchored ? std::string() : reference_base(script)) / ref.literal;
  }
  if (!fs::exists(candidate, ec)) return {};
  return candidate.lexically_normal().string();
}

}  // namespace

GuardVerdict guard_scan(const fs::path& script, const fs::path& root, const Config& config,
                        bool write_log) {
  const std::string rel = relative_to_root(script, root);
  const fs::path abs_root = fs::weakly_canonical(fs::absolute(root));
  std::ifstream in(abs_root / rel, std::ios::binary);
  if (!in) throw GuardError("cannot read script: " + rel);
  std::ostringstream ss;
  ss << in.rdbuf();

  ScriptFacts facts;
  try {
    facts = scan_script(rel, ss.str(), config.functions);
  } catch (const ScriptDecodeError& e) {
    throw GuardError(std::string(e.what()) + ": " + rel);
  }

  GuardVerdict verdict;
  verdict.script = rel;
  for (int line : facts.chdir_calls) verdict.blocking.push_back({line, std::string(kSetwdMessage)});

  const std::string base = reference_base(rel);
  for (const auto& ref : facts.path_refs) {
    if (!ref.resolved()) {
      verdict.warnings.push_back({ref.line, "unresolved path expression in " + ref.function + ": " + ref.expression});
      continue;
    }
    auto finding = classify_path(ref.literal, ref.root_anchored ? "" : base);
    if (!finding) continue;
    switch (finding->problem) {
      case PathProblem::Absolute:
        verdict.blocking.push_back({ref.line, std::string(kAbsolutePathsMessage)});
        break;
      case PathProblem::OutsideProject:
        verdict.blocking.push_back({ref.line, std::string(kOutsidePathsMessage)});
        break;
      case PathProblem::NonPortable:
        verdict.warnings.push_back({ref.line, std::string(kNonPortablePathsMessage) + ": " + ref.literal});
        break;
    }
  }
  for (const auto& w : facts.warnings) verdict.warnings.push_back({0, w});

  auto by_line = [](const GuardIssue& a, const GuardIssue& b) { return a.line < b.line; };
  std::stable_sort(verdict.blocking.begin(), verdict.blocking.end(), by_line);
  std::stable_sort(verdict.warnings.begin(), verdict.warnings.end(), by_line);

  if (write_log) {
    struct Pending {
      int line;
      LogEvent event;
    };
    std::vector<Pending> pending;
    const std::string ts = now_timestamp();
    for (const auto& p : facts.packages) {
      if (p.mechanism == LoadMechanism::NamespaceColon) continue;
      pending.push_back({p.line, LogEvent{"package:" + p.name, {},
                                          p.mechanism == LoadMechanism::Require ? "base::require" : "base::library",
                                          ts}});
    }
    for (const auto& ref : facts.path_refs) {
      if (!ref.resolved()) continue;
      pending.push_back({ref.line, LogEvent{ref.literal, local_absolute(abs_root, rel, ref), ref.function, ts}});
    }
    std::stable_sort(pending.begin(), pending.end(),
                     [](const Pending& a, const Pending& b) { return a.line < b.line; });
    std::vector<LogEvent> events;
    for (auto& p : pending) events.push_back(std::move(p.event));
    log_append(abs_root, std::move(events));
  }
  return verdict;
}

GuardVerdict guard_scan(const fs::path& script, const fs::path& root) {
  return guard_scan(script, root, load_config(root));
}

std::vector<std::string> split_command(std::string_view command) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  char quote = 0;
  for (std::size_t i = 0; i < command.size(); ++i) {
    const char c = command[i];
    if (quote) {
      if (c == quote) {
        quote = 0;
      } else if (c == '\\' && quote == '"' && i + 1 < command.size()) {
        current += command[++i];
      } else {
        current += c;
      }
    } else if (c == '\'' || c == '"') {
      quote = c;
      in_word = true;
    } else if (c == ' ' || c == '\t' || c == '\n') {
      if (in_word) words.push_back(std::move(current));
      current.clear();
      in_word = false;
    } else if (c == '\\' && i + 1 < command.size()) {
      current += command[++i];
      in_word = true;
    } else {
      current += c;
      in_word = true;
    }
  }
  if (in_word) words.push_back(std::move(current));
  return words;
}

GuardRunResult guard_run(const fs::path& script, const fs::path& root,
                         std::string_view runner_template) {
  GuardRunResult result;
  result.verdict = guard_scan(script, root);
  if (result.verdict.refused()) return result;

  auto argv_words = split_command(runner_template);
  if (argv_words.empty()) throw RunnerNotFound("empty runner command");
  for (auto& w : argv_words) {
    for (std::size_t pos; (pos = w.find("{script}")) != std::string::npos;) {
      w.replace(pos, 8, result.verdict.script);
    }
  }
  std::vector<char*> argv;
  for (auto& w : argv_words) argv.push_back(w.data());
  argv.push_back(nullptr);

  const fs::path abs_root = fs::weakly_canonical(fs::absolute(root));
  int report[2];
  if (::pipe2(report, O_CLOEXEC) != 0) throw std::runtime_error("pipe failed");

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(report[0]);
    ::close(report[1]);
    throw std::runtime_error("fork failed");
  }
  if (pid == 0) {
    ::close(report[0]);
    int err = 0;
    if (::chdir(abs_root.c_str()) != 0) {
      err = errno;
    } else {
      ::execvp(argv[0], argv.data());
      err = errno;
    }
    [[maybe_unused]] auto n = ::write(report[1], &err, sizeof err);
    ::_exit(127);
  }
  ::close(report[1]);
  int child_errno = 0;
  ssize_t got;
  do {
    got = ::read(report[0], &child_errno, sizeof child_errno);
  } while (got < 0 && errno == EINTR);
  ::close(report[0]);

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (got == static_cast<ssize_t>(sizeof child_errno)) {
    throw RunnerNotFound("runner not found: " + argv_words[0] + ": " + std::strerror(child_errno));
  }
  result.launched = true;
  if (WIFEXITED(status)) {
    result.exit_status = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_status = 128 + WTERMSIG(status);
  }
  return result;
}

}  // namespace reprolint
