#include "reprolint/checks.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <omp.h>

#include "reprolint/paths.hpp"

namespace reprolint {

namespace {

struct CheckInfo {
  CheckName name;
  std::string_view id;
  std::string_view description;
};

constexpr std::array<CheckInfo, kCheckCount> kChecks{{
    {CheckName::HasTidyMedia, "has_tidy_media", "Checking for no media files outside inst/"},
    {CheckName::HasTidyImages, "has_tidy_images", "Checking for no image files outside inst/"},
    {CheckName::HasTidyCode, "has_tidy_code", "Checking for no .R scripts outside R/"},
    {CheckName::HasTidyRawData, "has_tidy_raw_data", "Checking for no raw data outside data-raw/"},
    {CheckName::HasTidyData, "has_tidy_data", "Checking for no derived data outside data/"},
    {CheckName::HasTidyScripts, "has_tidy_scripts", "Checking for no .Rmd documents outside vignettes/"},
    {CheckName::HasReadme, "has_readme", "Checking for a README at the project root"},
    {CheckName::HasNoLint, "has_no_lint", "Checking for code style problems"},
    {CheckName::HasProjRoot, "has_proj_root", "Checking for a project marker at the root"},
    {CheckName::HasNoNestedProjRoot, "has_no_nested_proj_root", "Checking for no nested project markers"},
    {CheckName::HasOnlyUsedFiles, "has_only_used_files", "Checking for only files used by code"},
    {CheckName::HasClearBuildChain, "has_clear_build_chain", "Checking for a clear build chain"},
    {CheckName::HasNoAbsolutePaths, "has_no_absolute_paths", "Checking for no absolute paths"},
    {CheckName::HasOnlyPortablePaths, "has_only_portable_paths", "Checking for only portable paths"},
    {CheckName::HasNoRandomness, "has_no_randomness", "Checking for no unseeded randomness"},
}};

const CheckInfo& info(CheckName c) { return kChecks[static_cast<std::size_t>(c)]; }

bool under(std::string_view rel, std::string_view dir) {
  return rel.size() > dir.size() && rel.starts_with(dir) && rel[dir.size()] == '/';
}

std::string located(const std::string& script, int line) {
  return script + ":" + std::to_string(line);
}

CheckOutcome pass(CheckName c) { return CheckOutcome{c, CheckState::Pass, {}, {}, check_help(c), {}}; }

CheckOutcome verdict(CheckName c, std::vector<std::string> evidence, std::string problem,
                     std::string solution) {
  if (evidence.empty()) return pass(c);
  return CheckOutcome{c, CheckState::Fail, std::move(problem), std::move(solution), check_help(c),
                      std::move(evidence)};
}

CheckOutcome tidy(CheckName c, const ProjectDir& project, std::string_view dir,
                  bool (*selects)(const FileRecord&), std::string problem, std::string solution) {
  std::vector<std::string> evidence;
  for (const auto& f : project.files) {
    if (selects(f) && !under(f.rel_path, dir)) evidence.push_back(f.rel_path);
  }
  return verdict(c, std::move(evidence), std::move(problem), std::move(solution));
}

bool needs_scripts(CheckName c) {
  switch (c) {
    case CheckName::HasNoLint:
    case CheckName::HasOnlyUsedFiles:
    case CheckName::HasClearBuildChain:
    case CheckName::HasNoAbsolutePaths:
    case CheckName::HasOnlyPortablePaths:
    case CheckName::HasNoRandomness: return true;
    default: return false;
  }
}

std::string stem_path(std::string_view rel) {
  auto name = base_name(rel);
  auto dot = name.rfind('.');
  const std::size_t dir_len = rel.size() - name.size();
  return std::string(rel.substr(0, dir_len + (dot == std::string_view::npos || dot == 0 ? name.size() : dot)));
}

CheckOutcome only_used_files(const ProjectAnalysis& a) {
  std::set<std::string> used;
  std::set<std::string> script_stems;
  for (const auto& s : a.facts.scripts) {
    script_stems.insert(stem_path(s.script));
    for (const auto& ref : s.path_refs) {
      if (auto target = resolve_ref(s.script, ref)) used.insert(*target);
    }
  }
  std::vector<std::string> evidence;
  for (const auto& f : a.project.files) {
    if (f.category == FileCategory::Script || f.category == FileCategory::ProjectMetadata) continue;
    if (path_depth(f.rel_path) == 0 && is_readme(f.rel_path)) continue;
    if (used.count(f.rel_path)) continue;
    // A rendered copy of a script (analysis.Rmd -> analysis.html) is output.
    if (f.category == FileCategory::RenderedDoc && script_stems.count(stem_path(f.rel_path))) continue;
    evidence.push_back(f.rel_path);
  }
  return verdict(CheckName::HasOnlyUsedFiles, std::move(evidence),
                 "files are present that no script reads or writes",
                 "remove unused files or reference them from code");
}

CheckOutcome clear_build_chain(const ProjectAnalysis& a) {
  constexpr auto c = CheckName::HasClearBuildChain;
  auto cycle = find_cycle(a.graph);
  if (!cycle.empty()) {
    std::vector<std::string> evidence;
    for (const auto& n : cycle) evidence.push_back(n.path);
    return verdict(c, std::move(evidence), "scripts read and write files in a cycle",
                   "make every file have one producer that runs before its readers");
  }
  const auto scripts = a.graph.scripts();
  if (scripts.size() <= 1 || unique_script_order(a.graph)) return pass(c);

  std::map<std::string, long long> prefix;
  std::set<long long> distinct;
  bool numbered = true;
  for (const auto& s : scripts) {
    auto p = numeric_prefix(s);
    if (!p) {
      numbered = false;
      break;
    }
    prefix[s] = *p;
    distinct.insert(*p);
  }
  if (numbered && distinct.size() == scripts.size()) {
    const auto deps = script_dependencies(a.graph);
    const bool consistent = std::all_of(deps.begin(), deps.end(), [&](const auto& d) {
      return prefix[d.first] < prefix[d.second];
    });
    if (consistent) return pass(c);
  }
  return verdict(c, scripts, "the order in which scripts must run is ambiguous",
                 "number scripts in run order (01_..., 02_...) or chain them through the files they read and write");
}

CheckOutcome path_check(CheckName c, const ProjectAnalysis& a, PathProblem problem) {
  std::vector<std::string> evidence;
  for (const auto& s : a.facts.scripts) {
    for (const auto& ref : s.path_refs) {
      if (!ref.resolved()) continue;
      auto finding = classify_path(ref.literal, ref.root_anchored ? "" : reference_base(s.script));
      if (finding && finding->problem == problem) evidence.push_back(ref.literal);
    }
  }
  if (problem == PathProblem::Absolute) {
    return verdict(c, std::move(evidence), "absolute paths are used in code",
                   "use a project-relative path");
  }
  return verdict(c, std::move(evidence), "paths in code lead outside the project directory",
                 "keep files inside the project and use a project-relative path");
}

CheckOutcome no_randomness(const ProjectAnalysis& a) {
  std::vector<std::string> evidence;
  for (const auto& s : a.facts.scripts) {
    if (s.randomness_calls.empty()) continue;
    const int first_seed = s.seed_calls.empty() ? 0 : *std::min_element(s.seed_calls.begin(), s.seed_calls.end());
    for (const auto& call : s.randomness_calls) {
      if (first_seed == 0 || call.line <= first_seed) evidence.push_back(located(s.script, call.line));
    }
  }
  return verdict(CheckName::HasNoRandomness, std::move(evidence),
                 "random numbers are drawn before any call to set.seed()",
                 "call set.seed() before the first use of randomness in each script");
}

}  // namespace

std::string_view to_string(CheckName c) { return info(c).id; }

CheckName parse_check_name(std::string_view name) {
  for (const auto& i : kChecks) {
    if (i.id == name) return i.name;
  }
  throw UnknownCheckError(name);
}

const std::array<CheckName, kCheckCount>& list_checks() {
  static const std::array<CheckName, kCheckCount> names = [] {
    std::array<CheckName, kCheckCount> out{};
    for (std::size_t i = 0; i < kCheckCount; ++i) out[i] = kChecks[i].name;
    return out;
  }();
  return names;
}

std::string_view check_description(CheckName c) { return info(c).description; }

std::string check_help(CheckName c) { return "docs/checks.md#" + std::string(to_string(c)); }

std::string_view to_string(CheckState s) {
  switch (s) {
    case CheckState::Pass: return "pass";
    case CheckState::Fail: return "fail";
    case CheckState::Error: return "error";
  }
  return "error";
}

std::optional<CheckState> parse_check_state(std::string_view s) {
  for (auto st : {CheckState::Pass, CheckState::Fail, CheckState::Error}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

CheckSelection CheckSelection::exact(std::vector<std::string> names) {
  for (const auto& n : names) parse_check_name(n);
  return {Kind::Exact, std::move(names)};
}

bool CheckSelection::matches(CheckName c) const {
  const std::string_view id = to_string(c);
  switch (kind_) {
    case Kind::All: return true;
    case Kind::Contains: return id.find(args_[0]) != std::string_view::npos;
    case Kind::StartsWith: return id.starts_with(args_[0]);
    case Kind::EndsWith: return id.ends_with(args_[0]);
    case Kind::Exact: return std::find(args_.begin(), args_.end(), id) != args_.end();
  }
  return false;
}

std::vector<CheckName> CheckSelection::select() const {
  std::vector<CheckName> out;
  for (auto c : list_checks()) {
    if (matches(c)) out.push_back(c);
  }
  return out;
}

ProjectAnalysis analyze_project(const std::filesystem::path& root, const Config& config) {
  ProjectAnalysis a;
  a.project = scan_project(root);
  a.facts = scan_scripts(a.project, config.functions);
  a.graph = build_graph(a.facts.scripts, a.project);
  return a;
}

ProjectAnalysis analyze_project(const std::filesystem::path& root) {
  return analyze_project(root, load_config(root));
}

CheckOutcome run_check(CheckName name, const ProjectAnalysis& a) {
  if (needs_scripts(name) && !a.facts.errors.empty()) {
    CheckOutcome out{name, CheckState::Error, "some scripts could not be scanned",
                     "make sure every .R and .Rmd file is UTF-8 text", check_help(name), {}};
    for (const auto& e : a.facts.errors) out.evidence.push_back(e.script);
    return out;
  }
  const ProjectDir& p = a.project;
  switch (name) {
    case CheckName::HasTidyMedia:
      return tidy(name, p, "inst", [](const FileRecord& f) { return f.category == FileCategory::Media; },
                  "media files are outside inst/", "move media files into inst/other");
    case CheckName::HasTidyImages:
      return tidy(name, p, "inst", [](const FileRecord& f) { return f.category == FileCategory::Image; },
                  "image files are outside inst/", "move image files into inst/image");
    case CheckName::HasTidyCode:
      return tidy(name, p, "R", [](const FileRecord& f) { return f.category == FileCategory::Script && f.ext == "r"; },
                  ".R scripts are outside R/", "move .R scripts into R/");
    case CheckName::HasTidyRawData:
      return tidy(name, p, "data-raw", [](const FileRecord& f) { return f.category == FileCategory::RawData; },
                  "raw data files are outside data-raw/", "move raw data files into data-raw/");
    case CheckName::HasTidyData:
      return tidy(name, p, "data", [](const FileRecord& f) { return f.category == FileCategory::DerivedData; },
                  "derived data files are outside data/", "move derived data files into data/");
    case CheckName::HasTidyScripts:
      return tidy(name, p, "vignettes", [](const FileRecord& f) { return f.ext == "rmd"; },
                  ".Rmd documents are outside vignettes/", "move .Rmd documents into vignettes/");
    case CheckName::HasReadme: {
      const bool found = std::any_of(p.files.begin(), p.files.end(), [](const FileRecord& f) {
        return path_depth(f.rel_path) == 0 && is_readme(f.rel_path);
      });
      return found ? pass(name)
                   : verdict(name, {"."}, "there is no README file at the project root",
                             "add a README file at the project root");
    }
    case CheckName::HasNoLint: {
      std::vector<std::string> evidence;
      for (const auto& s : a.facts.scripts) {
        for (const auto& l : s.lint_findings) evidence.push_back(located(s.script, l.line) + ": " + l.rule);
      }
      return verdict(name, std::move(evidence), "code does not follow the style rules",
                     "fix the reported style issues");
    }
    case CheckName::HasProjRoot: {
      const bool found = std::any_of(p.root_markers.begin(), p.root_markers.end(),
                                     [](const std::string& m) { return path_depth(m) == 0; });
      return found ? pass(name)
                   : verdict(name, {"."}, "there is no project marker at the project root",
                             "add an .Rproj file (or an empty .here file) at the project root");
    }
    case CheckName::HasNoNestedProjRoot: {
      std::vector<std::string> evidence;
      for (const auto& m : p.root_markers) {
        if (path_depth(m) > 0) evidence.push_back(m);
      }
      return verdict(name, std::move(evidence), "project markers are nested below the project root",
                     "remove nested project markers or split the project in two");
    }
    case CheckName::HasOnlyUsedFiles: return only_used_files(a);
    case CheckName::HasClearBuildChain: return clear_build_chain(a);
    case CheckName::HasNoAbsolutePaths: return path_check(name, a, PathProblem::Absolute);
    case CheckName::HasOnlyPortablePaths: return path_check(name, a, PathProblem::OutsideProject);
    case CheckName::HasNoRandomness: return no_randomness(a);
  }
  throw UnknownCheckError(std::to_string(static_cast<int>(name)));
}

namespace {

CheckReport summarize(const ProjectAnalysis& a, std::vector<CheckOutcome> outcomes) {
  CheckReport report;
  report.project = a.project.root.filename().string();
  report.outcomes = std::move(outcomes);
  for (const auto& o : report.outcomes) {
    switch (o.state) {
      case CheckState::Pass: ++report.passed; break;
      case CheckState::Fail: ++report.failed; break;
      case CheckState::Error: ++report.errored; break;
    }
  }
  return report;
}

}  // namespace

CheckReport run_checks(const ProjectAnalysis& analysis, const CheckSelection& selection) {
  const auto names = selection.select();
  std::vector<CheckOutcome> outcomes(names.size());
  const auto n = static_cast<std::ptrdiff_t>(names.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    outcomes[k] = run_check(names[k], analysis);
  }
  return summarize(analysis, std::move(outcomes));
}

CheckReport run_checks_serial(const ProjectAnalysis& analysis, const CheckSelection& selection) {
  std::vector<CheckOutcome> outcomes;
  for (auto name : selection.select()) outcomes.push_back(run_check(name, analysis));
  return summarize(analysis, std::move(outcomes));
}

CheckReport proj_check(const std::filesystem::path& root, const CheckSelection& selection) {
  return run_checks(analyze_project(root), selection);
}

}  // namespace reprolint
