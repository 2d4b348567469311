#include "reprolint/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "reprolint/default_tables.hpp"
#include "reprolint/project.hpp"

namespace reprolint {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    out.push_back(trim(line.substr(start, tab == std::string_view::npos ? tab : tab - start)));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string_view to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::Read: return "read";
    case FunctionClass::Write: return "write";
    case FunctionClass::Random: return "random";
    case FunctionClass::Seed: return "seed";
    case FunctionClass::Chdir: return "chdir";
    case FunctionClass::Load: return "load";
  }
  return "read";
}

std::optional<FunctionClass> parse_function_class(std::string_view s) {
  for (auto c : {FunctionClass::Read, FunctionClass::Write, FunctionClass::Random,
                 FunctionClass::Seed, FunctionClass::Chdir, FunctionClass::Load}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

void FunctionTable::add(FunctionClass cls, std::string_view pattern, std::string_view argspec) {
  FunctionEntry entry{cls, {}, {}};
  if (!argspec.empty()) {
    auto colon = argspec.find(':');
    auto position = argspec.substr(0, colon);
    if (!position.empty()) {
      int value = 0;
      for (char ch : position) {
        if (ch < '0' || ch > '9') throw ConfigError("bad argument position: " + std::string(argspec));
        value = value * 10 + (ch - '0');
      }
      entry.path_position = value;
    }
    if (colon != std::string_view::npos) entry.path_argument = std::string(argspec.substr(colon + 1));
  }
  auto colons = pattern.find("::");
  if (colons == std::string_view::npos) {
    entry.name = std::string(pattern);
  } else {
    entry.package = std::string(pattern.substr(0, colons));
    auto rest = pattern.substr(colons + 2);
    if (rest.starts_with(':')) rest.remove_prefix(1);
    entry.name = std::string(rest);
  }
  by_name_.emplace(entry.name, entries_.size());
  entries_.push_back(std::move(entry));
}

const FunctionEntry* FunctionTable::match(std::string_view package, std::string_view name) const {
  const FunctionEntry* best = nullptr;
  auto [lo, hi] = by_name_.equal_range(name);
  for (auto it = lo; it != hi; ++it) {
    const FunctionEntry& e = entries_[it->second];
    if (!package.empty() && !e.package.empty() && e.package != package) continue;
    if (!best || &e > best) best = &e;
  }
  return best;
}

std::vector<const FunctionEntry*> FunctionTable::entries(FunctionClass cls) const {
  std::vector<const FunctionEntry*> out;
  for (const auto& e : entries_) {
    if (e.cls == cls) out.push_back(&e);
  }
  return out;
}

void PackageRegistry::set(std::string package, RegistryEntry entry) {
  entries_.insert_or_assign(std::move(package), std::move(entry));
}

RegistryEntry PackageRegistry::resolve(std::string_view package) const {
  auto it = entries_.find(package);
  return it == entries_.end() ? RegistryEntry{PackageOrigin::Cran, {}} : it->second;
}

void Config::merge_text(std::string_view text, std::string_view origin) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? nl : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    auto fields = split_tabs(line);
    auto fail = [&](std::string_view why) {
      throw ConfigError(std::string(origin) + ":" + std::to_string(line_no) + ": " +
                        std::string(why));
    };
    if (fields.size() < 2 || fields[1].empty()) fail("expected class<TAB>pattern");

    const std::string_view cls = fields[0];
    if (auto fc = parse_function_class(cls)) {
      try {
        functions.add(*fc, fields[1], fields.size() >= 3 ? fields[2] : std::string_view{});
      } catch (const ConfigError& e) {
        fail(e.what());
      }
    } else if (cls == "base") {
      registry.set(std::string(fields[1]), {PackageOrigin::Base, {}});
    } else if (cls == "cran") {
      registry.set(std::string(fields[1]), {PackageOrigin::Cran, {}});
    } else if (cls == "github") {
      const std::string_view slug = fields[1];
      auto slash = slug.find('/');
      if (slash == std::string_view::npos || slash == 0 || slash + 1 == slug.size()) {
        fail("github entries need a user/repo slug");
      }
      std::string package =
          fields.size() >= 3 && !fields[2].empty() ? std::string(fields[2])
                                                   : std::string(base_name(slug));
      registry.set(std::move(package), {PackageOrigin::GitHub, std::string(slug)});
    } else {
      fail("unknown class '" + std::string(cls) + "'");
    }
  }
}

Config Config::defaults() {
  Config config;
  config.merge_text(defaults::kFunctionTable, "functions.tsv");
  config.merge_text(defaults::kRegistry, "registry.tsv");
  return config;
}

Config load_config(const std::filesystem::path& project_root) {
  Config config = Config::defaults();
  if (const char* env = std::getenv("REPROLINT_CONFIG"); env && *env) {
    config.merge_text(read_file(env), env);
  }
  const auto local = project_root / std::string(kStateDir) / "config.tsv";
  std::error_code ec;
  if (std::filesystem::is_regular_file(local, ec)) {
    config.merge_text(read_file(local), local.string());
  }
  return config;
}

}  // namespace reprolint
