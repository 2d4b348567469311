#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reprolint {

namespace fs = std::filesystem;

/// Directory (relative to the project root) holding the tool's own state.
/// Never scanned, never copied into a sandbox.
inline constexpr std::string_view kStateDir = ".reprolint";

enum class FileCategory {
  RawData,
  DerivedData,
  Script,
  RenderedDoc,
  Image,
  Media,
  TextDoc,
  ProjectMetadata,
  Other,
};

std::string_view to_string(FileCategory c);
std::optional<FileCategory> parse_category(std::string_view s);

struct FileRecord {
  std::string rel_path;  // '/'-separated, relative, no ".." segments
  std::string ext;       // lowercase, without the dot
  std::uintmax_t size = 0;
  std::string mime;
  FileCategory category = FileCategory::Other;

  bool operator==(const FileRecord&) const = default;
};

struct Classification {
  std::string mime;
  FileCategory category;

  bool operator==(const Classification&) const = default;
};

/// Lowercase extension of the last path component. Dotfiles such as
/// ".gitignore" report the text after the leading dot.
std::string file_extension(std::string_view rel_path);

/// Final path component, either separator accepted.
std::string_view base_name(std::string_view path);

/// Pure table lookup; unknown extensions map to
/// ("application/octet-stream", Other).
Classification classify_file(std::string_view rel_path);

bool is_data_file(std::string_view path);
bool is_image_file(std::string_view path);
bool is_text_file(std::string_view path);
bool is_r_file(std::string_view path);

/// True for README, README.md, readme.txt, ... (any extension, any case).
bool is_readme(std::string_view path);

/// True for the names that mark a project root: "*.Rproj" and ".here"
/// files, or a ".git" directory.
bool is_project_marker_name(std::string_view name, bool is_directory);

class ScanError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProjectDir {
  fs::path root;  // absolute
  std::vector<FileRecord> files;          // sorted by rel_path
  std::vector<std::string> root_markers;  // sorted
  std::vector<std::string> warnings;      // unreadable entries, broken links

  const FileRecord* find(std::string_view rel_path) const;
  bool operator==(const ProjectDir&) const = default;
};

/// Walks `root` and classifies every regular file. Symlinks to files are
/// recorded without being followed into directories; the state directory
/// and the contents of ".git" are skipped.
/// Throws ScanError("not a project directory: ...") if root is not a
/// directory.
ProjectDir scan_project(const fs::path& root);

/// Depth of a rel_path: "a" is 0, "a/b" is 1.
std::size_t path_depth(std::string_view rel_path);

}  // namespace reprolint
