#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reprolint/config.hpp"
#include "reprolint/lexer.hpp"
#include "reprolint/project.hpp"

namespace reprolint {

enum class ScriptKind { RScript, RMarkdown };

/// Scanned languages: ".R" scripts and ".Rmd" documents.
std::optional<ScriptKind> script_kind(std::string_view rel_path);

struct CodeExtraction {
  std::vector<CodeLine> lines;
  std::vector<std::string> warnings;
};

/// R scripts yield every line. R Markdown yields only the lines inside
/// complete ```{r ...} chunks, minus `#|` chunk-option lines; fences of
/// other languages (and any longer fence enclosing them) are skipped.
CodeExtraction extract_code(std::string_view source, ScriptKind kind);

enum class LoadMechanism { Library, Require, NamespaceColon };
enum class IoKind { Read, Write, Unknown };

std::string_view to_string(LoadMechanism m);
std::string_view to_string(IoKind io);
std::optional<LoadMechanism> parse_load_mechanism(std::string_view s);
std::optional<IoKind> parse_io_kind(std::string_view s);

struct PackageUse {
  std::string name;
  LoadMechanism mechanism;
  int line;  // first occurrence

  bool operator==(const PackageUse&) const = default;
};

/// A path argument of an I/O call. `literal` is empty when the argument is
/// an expression the scanner cannot evaluate; `expression` then holds its
/// source text and io is Unknown.
struct PathRef {
  std::string literal;
  std::string function;  // qualified name from the function table
  int line;
  IoKind io;
  std::string expression;
  bool root_anchored = false;  // built with here::here()

  bool resolved() const { return !literal.empty(); }
  bool operator==(const PathRef&) const = default;
};

struct CallSite {
  std::string function;
  int line;

  bool operator==(const CallSite&) const = default;
};

struct LintFinding {
  std::string rule;
  int line;

  bool operator==(const LintFinding&) const = default;
};

// Lint rule ids.
inline constexpr std::string_view kLintLineLength = "line_length";
inline constexpr std::string_view kLintEqualsAssignment = "equals_assignment";
inline constexpr std::string_view kLintCommas = "commas";
inline constexpr std::string_view kLintTrailingWhitespace = "trailing_whitespace";
inline constexpr std::size_t kMaxLineLength = 80;

struct ScriptFacts {
  std::string script;
  std::vector<PackageUse> packages;  // unique per (name, mechanism)
  std::vector<PathRef> path_refs;
  std::vector<CallSite> randomness_calls;
  std::vector<int> seed_calls;
  std::vector<int> chdir_calls;
  std::vector<LintFinding> lint_findings;
  std::vector<std::string> warnings;

  bool operator==(const ScriptFacts&) const = default;
};

class ScriptDecodeError : public std::runtime_error {
 public:
  ScriptDecodeError() : std::runtime_error("not a text script") {}
};

/// Tokenizes `content` and records every fact class. The script kind is
/// taken from the extension of `script`; anything that is not ".Rmd" is
/// scanned as plain R.
/// Throws ScriptDecodeError for invalid UTF-8 or embedded NUL bytes.
ScriptFacts scan_script(std::string_view script, std::string_view content,
                        const FunctionTable& table);

/// Lint rules over already-extracted code lines.
std::vector<LintFinding> lint_code(const std::vector<CodeLine>& lines, const LexResult& lexed);

/// Directory against which a script's relative literals resolve: the
/// document's own directory for R Markdown (knitr's working directory), the
/// project root otherwise.
std::string reference_base(std::string_view script);

/// Root-relative target of a resolved path ref, nullopt for absolute,
/// escaping, URL or unresolved references.
std::optional<std::string> resolve_ref(std::string_view script, const PathRef& ref);

struct ScriptScanError {
  std::string script;
  std::string message;

  bool operator==(const ScriptScanError&) const = default;
};

struct ProjectFacts {
  std::vector<ScriptFacts> scripts;  // in project file order
  std::vector<ScriptScanError> errors;

  bool operator==(const ProjectFacts&) const = default;
};

/// Scans every R/Rmd file of the project, one OpenMP task per script.
ProjectFacts scan_scripts(const ProjectDir& project, const FunctionTable& table);

/// Single-threaded reference for scan_scripts.
ProjectFacts scan_scripts_serial(const ProjectDir& project, const FunctionTable& table);

}  // namespace reprolint
