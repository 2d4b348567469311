#include "reprolint/paths.hpp"

#include <algorithm>
#include <cctype>

namespace reprolint {

namespace {

bool is_sep(char c) { return c == '/' || c == '\\'; }

std::vector<std::string_view> split_segments(std::string_view path) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= path.size(); ++i) {
    if (i == path.size() || is_sep(path[i])) {
      if (i > start) out.push_back(path.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

constexpr std::string_view kRelativeRemedy = "use a project-relative path";

}  // namespace

std::string_view to_string(PathProblem p) {
  switch (p) {
    case PathProblem::Absolute: return "absolute";
    case PathProblem::OutsideProject: return "outside-project";
    case PathProblem::NonPortable: return "non-portable";
  }
  return "absolute";
}

std::optional<PathProblem> parse_path_problem(std::string_view s) {
  for (auto p : {PathProblem::Absolute, PathProblem::OutsideProject, PathProblem::NonPortable}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

PathKind path_kind(std::string_view path) {
  if (path.empty()) throw std::invalid_argument("empty path");
  const char first = path.front();
  if (first == '/' || first == '~') return PathKind::Absolute;
  if (path.starts_with("\\\\")) return PathKind::Absolute;
  if (path.size() >= 2 && std::isalpha(static_cast<unsigned char>(first)) && path[1] == ':' &&
      (path.size() == 2 || is_sep(path[2]))) {
    return PathKind::Absolute;
  }
  return PathKind::Relative;
}

bool is_url(std::string_view path) {
  auto pos = path.find("://");
  if (pos == std::string_view::npos || pos < 2) return false;
  return std::all_of(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(pos), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
  });
}

std::optional<std::string> normalize_within(std::string_view path, std::string_view base) {
  std::vector<std::string_view> stack;
  for (auto part : {base, path}) {
    for (auto seg : split_segments(part)) {
      if (seg == ".") continue;
      if (seg == "..") {
        if (stack.empty()) return std::nullopt;
        stack.pop_back();
        continue;
      }
      stack.push_back(seg);
    }
  }
  if (stack.empty()) return std::string(".");
  std::string out;
  for (auto seg : stack) {
    if (!out.empty()) out += '/';
    out += seg;
  }
  return out;
}

std::optional<PathFinding> classify_path(std::string_view path, std::string_view base) {
  if (path.empty() || is_url(path)) return std::nullopt;
  if (path_kind(path) == PathKind::Absolute) {
    return PathFinding{std::string(path), PathProblem::Absolute, std::string(kRelativeRemedy)};
  }
  if (!normalize_within(path, base)) {
    return PathFinding{std::string(path), PathProblem::OutsideProject,
                       "keep files inside the project and use a project-relative path"};
  }
  const bool backslash = path.find('\\') != std::string_view::npos;
  const auto segments = split_segments(path);
  const bool tilde = std::any_of(segments.begin(), segments.end(),
                                 [](std::string_view s) { return s.starts_with('~'); });
  if (backslash || tilde) {
    return PathFinding{std::string(path), PathProblem::NonPortable,
                       backslash ? "use '/' as the separator in a project-relative path"
                                 : "avoid '~' and use a project-relative path"};
  }
  return std::nullopt;
}

std::vector<PathFinding> check_path(const std::vector<std::string>& paths, std::string_view base) {
  std::vector<PathFinding> out;
  for (const auto& p : paths) {
    if (auto f = classify_path(p, base)) out.push_back(std::move(*f));
  }
  return out;
}

void raise_for_findings(const std::vector<PathFinding>& findings) {
  auto has = [&](PathProblem p) {
    return std::any_of(findings.begin(), findings.end(),
                       [p](const PathFinding& f) { return f.problem == p; });
  };
  if (has(PathProblem::Absolute)) throw PathError(PathProblem::Absolute, kAbsolutePathsMessage);
  if (has(PathProblem::OutsideProject)) {
    throw PathError(PathProblem::OutsideProject, kOutsidePathsMessage);
  }
  if (has(PathProblem::NonPortable)) {
    throw PathError(PathProblem::NonPortable, kNonPortablePathsMessage);
  }
}

void check_path_strict(const std::vector<std::string>& paths, std::string_view base) {
  raise_for_findings(check_path(paths, base));
}

}  // namespace reprolint
