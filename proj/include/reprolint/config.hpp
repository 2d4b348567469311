#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace reprolint {

enum class FunctionClass { Read, Write, Random, Seed, Chdir, Load };

std::string_view to_string(FunctionClass c);
std::optional<FunctionClass> parse_function_class(std::string_view s);

struct FunctionEntry {
  FunctionClass cls;
  std::string package;  // empty when the table entry is unqualified
  std::string name;
  // Where the path lives for read/write functions: a named argument, else
  // the Nth positional one (0 = named only).
  int path_position = 1;
  std::string path_argument = "file";

  std::string qualified() const { return package.empty() ? name : package + "::" + name; }
};

/// Maps call sites to function classes. A call matches an entry by its bare
/// name, or by "pkg::name" when the package agrees with the entry.
class FunctionTable {
 public:
  /// `argspec` is "N", "N:name" or ":name"; empty keeps the default "1:file".
  void add(FunctionClass cls, std::string_view pattern, std::string_view argspec = {});
  /// Looks up a call. `package` is empty for unqualified calls.
  const FunctionEntry* match(std::string_view package, std::string_view name) const;
  std::vector<const FunctionEntry*> entries(FunctionClass cls) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<FunctionEntry> entries_;
  std::multimap<std::string, std::size_t, std::less<>> by_name_;
};

enum class PackageOrigin { Base, Cran, GitHub };

struct RegistryEntry {
  PackageOrigin origin;
  std::string slug;  // "user/repo" for GitHub, empty otherwise
};

class PackageRegistry {
 public:
  void set(std::string package, RegistryEntry entry);
  /// Packages without an entry resolve to CRAN.
  RegistryEntry resolve(std::string_view package) const;

 private:
  std::map<std::string, RegistryEntry, std::less<>> entries_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One line per entry, `class<TAB>pattern`; '#' starts a comment line.
/// Function classes: read, write, random, seed, chdir, load. Read and write
/// entries take an optional third column locating the path argument.
/// Registry classes: base, cran (pattern = package),
/// github (pattern = user/repo, optional third column = package).
struct Config {
  FunctionTable functions;
  PackageRegistry registry;

  /// Appends entries. Later entries win.
  void merge_text(std::string_view text, std::string_view origin = "<config>");

  /// The tables compiled into the tool.
  static Config defaults();
};

/// Defaults, then $REPROLINT_CONFIG (if set), then the project-local file
/// `<root>/.reprolint/config.tsv` (if present). Later sources take
/// precedence.
Config load_config(const std::filesystem::path& project_root);

}  // namespace reprolint
