#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reprolint {

enum class PathKind { Absolute, Relative };

enum class PathProblem { Absolute, OutsideProject, NonPortable };

std::string_view to_string(PathProblem p);
std::optional<PathProblem> parse_path_problem(std::string_view s);

struct PathFinding {
  std::string path;
  PathProblem problem;
  std::string solution;

  bool operator==(const PathFinding&) const = default;
};

// Messages raised by the strict variants. Bit-exact.
inline constexpr std::string_view kAbsolutePathsMessage = "Detected absolute paths";
inline constexpr std::string_view kOutsidePathsMessage =
    "Detected paths that lead outside the project directory";
inline constexpr std::string_view kNonPortablePathsMessage = "Detected non-portable paths";

/// Thrown by check_path_strict. what() is exactly one of the messages above.
class PathError : public std::runtime_error {
 public:
  PathError(PathProblem problem, std::string_view message)
      : std::runtime_error(std::string(message)), problem_(problem) {}
  PathProblem problem() const noexcept { return problem_; }

 private:
  PathProblem problem_;
};

/// Absolute means anchored to a particular machine: a leading '/', '~',
/// a UNC "\\" prefix, or a drive letter such as "C:\" or "c:/".
/// Throws std::invalid_argument("empty path") on "".
PathKind path_kind(std::string_view path);

/// "scheme://..." style locations. These are skipped by every path check.
bool is_url(std::string_view path);

/// Lexically resolves `path` (relative) against `base` (a root-relative
/// directory, "" for the root). Both separators are accepted. Returns the
/// '/'-separated root-relative result, "." for the root itself, or nullopt
/// if any step rises above the root.
std::optional<std::string> normalize_within(std::string_view path, std::string_view base = "");

/// Classifies one path; nullopt when the path is safe (or a URL).
/// Precedence: absolute, then outside-project, then non-portable.
std::optional<PathFinding> classify_path(std::string_view path, std::string_view base = "");

/// Returns findings for every problematic path, in input order.
/// Empty paths and URLs are skipped.
std::vector<PathFinding> check_path(const std::vector<std::string>& paths,
                                    std::string_view base = "");

/// Throwing variant: any absolute path raises kAbsolutePathsMessage; else
/// any escaping path raises kOutsidePathsMessage; else any non-portable
/// path raises kNonPortablePathsMessage.
void check_path_strict(const std::vector<std::string>& paths, std::string_view base = "");

/// Raises the strict-mode error for a list of findings (no-op if empty).
void raise_for_findings(const std::vector<PathFinding>& findings);

}  // namespace reprolint
