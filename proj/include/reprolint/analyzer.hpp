#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "reprolint/checks.hpp"
#include "reprolint/config.hpp"
#include "reprolint/paths.hpp"
#include "reprolint/project.hpp"

namespace reprolint {

struct PackageRef {
  std::string package;
  std::size_t n = 0;  // == used_in.size()
  std::vector<std::string> used_in;

  bool operator==(const PackageRef&) const = default;
};

struct MoveSuggestion {
  std::string path_rel;
  std::string dir_rel;
  std::string cmd;

  bool operator==(const MoveSuggestion&) const = default;
};

struct AnalysisReport {
  std::string project;  // root directory name
  std::vector<PackageRef> packages;  // sorted by name
  std::vector<FileRecord> files;
  std::vector<MoveSuggestion> moves;  // sorted by path_rel
  std::vector<PathFinding> paths_logged;

  bool operator==(const AnalysisReport&) const = default;
};

/// Target directory for a file, nullopt when it should stay where it is.
/// Files already under their target get nullopt too.
std::optional<std::string> move_target(const FileRecord& file);

/// `reprolint mv <src> <dstdir>`, shell-quoted where needed.
std::string move_command(std::string_view path_rel, std::string_view dir_rel);

AnalysisReport analyze(const ProjectAnalysis& analysis);
AnalysisReport proj_analyze(const std::filesystem::path& root);

/// Text of the dependency install script.
std::string package_script(const std::vector<PackageRef>& packages, const PackageRegistry& registry);

/// Writes the install script to `output` (relative paths resolve against
/// root) and returns the path written.
std::filesystem::path proj_pkg_script(const std::filesystem::path& root,
                                      const std::filesystem::path& output);

class MoveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Creates `dir_rel` under root and moves `path_rel` into it. Refuses to
/// overwrite or to touch anything outside the root. Returns the new
/// root-relative path.
std::string apply_move(const std::filesystem::path& root, std::string_view path_rel,
                       std::string_view dir_rel);

}  // namespace reprolint
