#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reprolint/config.hpp"
#include "reprolint/graph.hpp"
#include "reprolint/project.hpp"
#include "reprolint/scanner.hpp"

namespace reprolint {

/// The fifteen checks, in canonical order.
enum class CheckName {
  HasTidyMedia,
  HasTidyImages,
  HasTidyCode,
  HasTidyRawData,
  HasTidyData,
  HasTidyScripts,
  HasReadme,
  HasNoLint,
  HasProjRoot,
  HasNoNestedProjRoot,
  HasOnlyUsedFiles,
  HasClearBuildChain,
  HasNoAbsolutePaths,
  HasOnlyPortablePaths,
  HasNoRandomness,
};

inline constexpr std::size_t kCheckCount = 15;

std::string_view to_string(CheckName c);

class UnknownCheckError : public std::invalid_argument {
 public:
  explicit UnknownCheckError(std::string_view name)
      : std::invalid_argument("unknown check: " + std::string(name)) {}
};

/// Throws UnknownCheckError.
CheckName parse_check_name(std::string_view name);

/// All checks, canonical order.
const std::array<CheckName, kCheckCount>& list_checks();

/// One-line description ("Checking for ...") shown in reports.
std::string_view check_description(CheckName c);

/// Help anchor in the project documentation.
std::string check_help(CheckName c);

enum class CheckState { Pass, Fail, Error };
std::string_view to_string(CheckState s);
std::optional<CheckState> parse_check_state(std::string_view s);

struct CheckOutcome {
  CheckName name;
  CheckState state = CheckState::Pass;
  std::string problem;   // empty on pass
  std::string solution;  // empty on pass
  std::string help;
  std::vector<std::string> evidence;

  bool operator==(const CheckOutcome&) const = default;
};

/// Case-sensitive selection over the check names.
class CheckSelection {
 public:
  enum class Kind { All, Contains, StartsWith, EndsWith, Exact };

  static CheckSelection all() { return {Kind::All, {}}; }
  static CheckSelection contains(std::string s) { return {Kind::Contains, {std::move(s)}}; }
  static CheckSelection starts_with(std::string s) { return {Kind::StartsWith, {std::move(s)}}; }
  static CheckSelection ends_with(std::string s) { return {Kind::EndsWith, {std::move(s)}}; }
  /// Throws UnknownCheckError for names outside the catalog.
  static CheckSelection exact(std::vector<std::string> names);

  bool matches(CheckName c) const;
  std::vector<CheckName> select() const;  // canonical order

 private:
  CheckSelection(Kind kind, std::vector<std::string> args) : kind_(kind), args_(std::move(args)) {}
  Kind kind_;
  std::vector<std::string> args_;
};

/// Everything the checks read: the scanned tree, per-script facts and the
/// build graph.
struct ProjectAnalysis {
  ProjectDir project;
  ProjectFacts facts;
  BuildGraph graph;
};

/// Scans the tree and every script. Throws ScanError for a bad root.
ProjectAnalysis analyze_project(const std::filesystem::path& root, const Config& config);
ProjectAnalysis analyze_project(const std::filesystem::path& root);

CheckOutcome run_check(CheckName name, const ProjectAnalysis& analysis);

struct CheckReport {
  std::string project;  // root directory name
  std::vector<CheckOutcome> outcomes;  // canonical order
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errored = 0;

  bool operator==(const CheckReport&) const = default;
};

/// Runs the selected checks in parallel, merged in canonical order.
CheckReport run_checks(const ProjectAnalysis& analysis, const CheckSelection& selection);

/// Single-threaded reference for run_checks.
CheckReport run_checks_serial(const ProjectAnalysis& analysis, const CheckSelection& selection);

CheckReport proj_check(const std::filesystem::path& root,
                       const CheckSelection& selection = CheckSelection::all());

}  // namespace reprolint
