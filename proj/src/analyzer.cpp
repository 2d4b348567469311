#include "reprolint/analyzer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>

namespace reprolint {

namespace {

bool under(std::string_view rel, std::string_view dir) {
  return rel.size() > dir.size() && rel.starts_with(dir) && rel[dir.size()] == '/';
}

std::string shell_quote(std::string_view s) {
  const bool plain = !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '/' || c == '.' || c == '_' ||
           c == '-' || c == '+' || c == ',' || c == ':' || c == '@';
  });
  if (plain) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

std::optional<std::string> move_target(const FileRecord& file) {
  const bool at_root = path_depth(file.rel_path) == 0;
  std::string target;
  switch (file.category) {
    case FileCategory::RawData: target = "data-raw"; break;
    case FileCategory::DerivedData: target = "data"; break;
    case FileCategory::Image: target = "inst/image"; break;
    case FileCategory::RenderedDoc:
    case FileCategory::Media: target = "inst/other"; break;
    case FileCategory::Script:
      if (file.ext == "r") {
        target = "R";
      } else if (file.ext == "rmd") {
        target = "vignettes";
      } else {
        return std::nullopt;
      }
      break;
    case FileCategory::Other:
      if (at_root && is_readme(file.rel_path)) return std::nullopt;
      target = "inst/other";
      break;
    case FileCategory::TextDoc:
    case FileCategory::ProjectMetadata: return std::nullopt;
  }
  if (under(file.rel_path, target)) return std::nullopt;
  return target;
}

std::string move_command(std::string_view path_rel, std::string_view dir_rel) {
  return "reprolint mv " + shell_quote(path_rel) + " " + shell_quote(dir_rel);
}

AnalysisReport analyze(const ProjectAnalysis& a) {
  AnalysisReport report;
  report.project = a.project.root.filename().string();

  std::map<std::string, std::set<std::string>> used_in;
  for (const auto& s : a.facts.scripts) {
    for (const auto& p : s.packages) used_in[p.name].insert(s.script);
  }
  for (auto& [name, scripts] : used_in) {
    report.packages.push_back(PackageRef{name, scripts.size(), {scripts.begin(), scripts.end()}});
  }

  report.files = a.project.files;

  for (const auto& f : a.project.files) {
    if (auto dir = move_target(f)) {
      report.moves.push_back(MoveSuggestion{f.rel_path, *dir, move_command(f.rel_path, *dir)});
    }
  }

  std::set<std::string> seen;
  for (const auto& s : a.facts.scripts) {
    for (const auto& ref : s.path_refs) {
      if (!ref.resolved()) continue;
      auto finding = classify_path(ref.literal, ref.root_anchored ? "" : reference_base(s.script));
      if (finding && seen.insert(finding->path).second) report.paths_logged.push_back(*finding);
    }
  }
  std::sort(report.paths_logged.begin(), report.paths_logged.end(),
            [](const PathFinding& x, const PathFinding& y) { return x.path < y.path; });
  return report;
}

AnalysisReport proj_analyze(const std::filesystem::path& root) {
  return analyze(analyze_project(root));
}

std::string package_script(const std::vector<PackageRef>& packages, const PackageRegistry& registry) {
  std::vector<std::string> cran;
  std::vector<std::string> github;
  for (const auto& p : packages) {
    auto origin = registry.resolve(p.package);
    switch (origin.origin) {
      case PackageOrigin::Base: break;
      case PackageOrigin::Cran: cran.push_back(p.package); break;
      case PackageOrigin::GitHub: github.push_back(origin.slug); break;
    }
  }
  std::sort(cran.begin(), cran.end());
  std::sort(github.begin(), github.end());

  std::string out = "# Run this script to install the required packages for this R project.\n";
  out += "# Packages hosted on CRAN...\n";
  if (!cran.empty()) {
    out += "install.packages(c(";
    for (std::size_t i = 0; i < cran.size(); ++i) {
      out += (i ? ", '" : " '") + cran[i] + "'";
    }
    out += " ))\n";
  }
  out += "# Packages hosted on GitHub...\n";
  for (const auto& slug : github) out += "remotes::install_github('" + slug + "')\n";
  return out;
}

std::filesystem::path proj_pkg_script(const std::filesystem::path& root,
                                      const std::filesystem::path& output) {
  const Config config = load_config(root);
  const AnalysisReport report = analyze(analyze_project(root, config));
  const auto target = output.is_absolute() ? output : root / output;
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + target.string());
  out << package_script(report.packages, config.registry);
  out.close();
  if (!out) throw std::runtime_error("cannot write " + target.string());
  return target;
}

std::string apply_move(const std::filesystem::path& root, std::string_view path_rel,
                       std::string_view dir_rel) {
  auto src = normalize_within(path_rel);
  auto dir = normalize_within(dir_rel);
  if (path_rel.empty() || dir_rel.empty() || path_kind(path_rel) == PathKind::Absolute ||
      path_kind(dir_rel) == PathKind::Absolute || !src || !dir) {
    throw MoveError("paths must be project-relative");
  }
  const auto from = root / *src;
  std::error_code ec;
  if (!std::filesystem::is_regular_file(from, ec) && !std::filesystem::is_symlink(from, ec)) {
    throw MoveError("no such file: " + *src);
  }
  const std::string name(base_name(*src));
  const std::string dest_rel = *dir == "." ? name : *dir + "/" + name;
  const auto to = root / dest_rel;
  if (std::filesystem::exists(std::filesystem::symlink_status(to, ec))) {
    throw MoveError("destination exists: " + dest_rel);
  }
  std::filesystem::create_directories(root / *dir, ec);
  if (ec) throw MoveError("cannot create " + *dir + ": " + ec.message());
  std::filesystem::rename(from, to, ec);
  if (ec) throw MoveError("cannot move " + *src + ": " + ec.message());
  return dest_rel;
}

}  // namespace reprolint
