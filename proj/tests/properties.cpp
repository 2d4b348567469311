#include "properties.hpp"

#include <algorithm>
#include <regex>

#include "reprolint/analyzer.hpp"
#include "reprolint/checks.hpp"
#include "reprolint/event_log.hpp"
#include "reprolint/guard.hpp"
#include "reprolint/paths.hpp"
#include "reprolint/scanner.hpp"

namespace testing {

using namespace reprolint;

namespace {

int uniform(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

std::string segment(std::mt19937& rng) {
  static const std::string alphabet = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.";
  for (;;) {
    std::string s;
    const int n = uniform(rng, 1, 8);
    for (int i = 0; i < n; ++i) s += alphabet[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(alphabet.size()) - 1))];
    if (s != "." && s != "..") return s;
  }
}

std::string safe_relative(std::mt19937& rng) {
  std::string out;
  const int n = uniform(rng, 1, 5);
  for (int i = 0; i < n; ++i) {
    if (!out.empty()) out += '/';
    if (chance(rng, 0.15)) out += "./";
    out += segment(rng);
  }
  if (chance(rng, 0.1)) out += '/';
  return out;
}

std::string any_relative(std::mt19937& rng) {
  std::string out;
  const int n = uniform(rng, 1, 7);
  for (int i = 0; i < n; ++i) {
    if (i) out += chance(rng, 0.2) ? "\\" : (chance(rng, 0.1) ? "//" : "/");
    const int kind = uniform(rng, 0, 9);
    out += kind < 3 ? ".." : kind < 4 ? "." : segment(rng);
  }
  return out;
}

std::string base_dir(std::mt19937& rng) {
  std::string out;
  const int n = uniform(rng, 0, 3);
  for (int i = 0; i < n; ++i) out += (out.empty() ? "" : "/") + segment(rng);
  return out;
}

}  // namespace

std::optional<std::string> oracle_normalize(std::string path, std::string base) {
  std::replace(path.begin(), path.end(), '\\', '/');
  std::replace(base.begin(), base.end(), '\\', '/');
  std::string anchor;
  for (int i = 0; i < 64; ++i) anchor += "/@" + std::to_string(i);
  fs::path full = fs::path(anchor);
  if (!base.empty()) full /= base;
  full /= path;
  std::string n = full.lexically_normal().generic_string();
  while (n.size() > 1 && n.back() == '/') n.pop_back();
  if (n == anchor) return ".";
  if (!n.starts_with(anchor + "/")) return std::nullopt;
  return n.substr(anchor.size() + 1);
}

PropertyResult prop_path_classifier(unsigned seed, int cases) {
  PropertyResult r{"path classifier"};
  std::mt19937 rng(seed);
  static const std::vector<std::string> prefixes = {"/", "~", "~/", "~analyst/", "C:/", "c:\\", "Z:\\",
                                                    "\\\\server\\share\\", "//host/", "/home/u/"};
  for (int i = 0; i < cases; ++i, ++r.cases) {
    const std::string base = base_dir(rng);

    const std::string rel = safe_relative(rng);
    r.expect(!classify_path(rel, base), "relative path flagged: " + rel + " (base " + base + ")");

    const std::string abs = pick(rng, prefixes) + (chance(rng, 0.3) ? any_relative(rng) : safe_relative(rng));
    const auto finding = classify_path(abs, base);
    r.expect(finding && finding->problem == PathProblem::Absolute, "absolute path not flagged: " + abs);

    const std::string messy = any_relative(rng);
    const auto got = normalize_within(messy, base);
    const auto want = oracle_normalize(messy, base);
    r.expect(got == want, "normalize disagrees with oracle on " + messy + " (base " + base + "): " +
                              got.value_or("<escape>") + " vs " + want.value_or("<escape>"));
    if (got) {
      r.expect(normalize_within(*got) == got, "normalize not idempotent on " + *got);
    }
  }
  return r;
}

namespace {

struct Call {
  std::string package;  // empty when unqualified
  std::string name;
};

const std::regex kComment("#.*$");
const std::regex kLoad(R"(^(?:base::)?(library|require)\(\s*(?:([A-Za-z][A-Za-z0-9.]*)|S_(\d+)_)\s*\))");
const std::regex kString(R"("[^"]*"|'[^']*')");
const std::regex kNamespace(R"(^([A-Za-z][A-Za-z0-9.]*):::?([A-Za-z.][A-Za-z0-9._]*))");
const std::regex kCall(R"(^(?:([A-Za-z][A-Za-z0-9.]*):::?)?([A-Za-z.][A-Za-z0-9._]*)\s*\()");

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '_'; }

// Starting offsets of identifiers not glued to a preceding name, `$`, `@`
// or `::`.
std::vector<std::size_t> word_starts(const std::string& line) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '.')) continue;
    if (i > 0) {
      const char p = line[i - 1];
      if (ident_char(p) || p == '$' || p == '@' || p == ':') continue;
    }
    out.push_back(i);
  }
  return out;
}

const FunctionEntry* oracle_match(const FunctionTable& table, const Call& call) {
  const FunctionEntry* found = nullptr;
  for (auto cls : {FunctionClass::Read, FunctionClass::Write, FunctionClass::Random, FunctionClass::Seed,
                   FunctionClass::Chdir, FunctionClass::Load}) {
    for (const auto* e : table.entries(cls)) {
      if (e->name != call.name) continue;
      if (!call.package.empty() && call.package != e->package) continue;
      found = e;
    }
  }
  return found;
}

}  // namespace

OracleFacts oracle_scan(const std::string& script, const FunctionTable& table) {
  OracleFacts out;
  int number = 0;
  std::istringstream in(script);
  for (std::string line; std::getline(in, line);) {
    ++number;
    line = std::regex_replace(line, kComment, "");

    // Strings become S_<n>_ so nothing inside them looks like code.
    std::vector<std::string> strings;
    std::string code;
    auto last = line.cbegin();
    for (std::sregex_iterator it(line.begin(), line.end(), kString), end; it != end; ++it) {
      code.append(last, (*it)[0].first);
      code += "S_" + std::to_string(strings.size()) + "_";
      const std::string lit = it->str();
      strings.push_back(lit.substr(1, lit.size() - 2));
      last = (*it)[0].second;
    }
    code.append(last, line.cend());

    for (std::size_t at : word_starts(code)) {
      const std::string rest = code.substr(at);
      std::smatch m;
      if (std::regex_search(rest, m, kLoad)) {
        const std::string name = m[2].matched ? m[2].str() : strings[std::stoul(m[3].str())];
        if (std::regex_match(name, std::regex("[A-Za-z][A-Za-z0-9.]*"))) out.packages.insert({name, m[1].str()});
      }
      if (std::regex_search(rest, m, kNamespace)) out.packages.insert({m[1].str(), "namespace-colon"});
      if (!std::regex_search(rest, m, kCall)) continue;
      const FunctionEntry* e = oracle_match(table, Call{m[1].str(), m[2].str()});
      if (!e) continue;
      if (e->cls == FunctionClass::Random) out.randomness.emplace_back(e->qualified(), number);
      if (e->cls == FunctionClass::Seed) out.seeds.push_back(number);
      if (e->cls == FunctionClass::Chdir) out.chdirs.push_back(number);
    }
  }
  return out;
}

std::string generate_script(std::mt19937& rng, const FunctionTable& table) {
  static const std::vector<std::string> packages = {"dplyr", "ggplot2", "data.table", "R6", "tidyr",
                                                    "purrr", "readr", "stringr", "lubridate", "sf"};
  static const std::vector<std::string> noise = {
      "z <- mean(c(1, 2, 3))",
      "obj$sample(3)",
      "m@rnorm",
      "msg <- \"sample(1:3) then library(fake)\"",
      "txt <- 'setwd(here) and set.seed(1)'",
      "# rnorm(3) library(fake) setwd(x)",
      "f <- function(n) n + 1",
      "other::rnorm(2)",
      "x_rnorm <- 3",
      "if (TRUE) {",
      "}",
      "",
  };
  std::vector<const FunctionEntry*> random = table.entries(FunctionClass::Random);
  std::string out;
  const int lines = uniform(rng, 1, 25);
  for (int i = 0; i < lines; ++i) {
    const auto& pkg = pick(rng, packages);
    const auto* fn = pick(rng, random);
    switch (uniform(rng, 0, 11)) {
      case 0: out += "library(" + pkg + ")"; break;
      case 1: out += "require(\"" + pkg + "\")"; break;
      case 2: out += "base::library(" + pkg + ")"; break;
      case 3: out += "res <- " + pkg + "::helper(1)"; break;
      case 4: out += "y <- " + fn->name + "(10)"; break;
      case 5: out += "y <- " + fn->qualified() + "(5)"; break;
      case 6: out += "set.seed(" + std::to_string(uniform(rng, 1, 999)) + ")"; break;
      case 7: out += "setwd(\"" + segment(rng) + "\")"; break;
      case 8: out += "a <- " + fn->name + "(1); b <- " + pick(rng, random)->name + "(2)"; break;
      case 9: out += "w <- mean(" + fn->name + "(3))  # " + pick(rng, random)->name + "(9)"; break;
      default: out += pick(rng, noise); break;
    }
    out += '\n';
  }
  return out;
}

PropertyResult prop_scanner_oracle(unsigned seed, int cases) {
  PropertyResult r{"scanner oracle"};
  std::mt19937 rng(seed);
  const Config config = Config::defaults();
  for (int i = 0; i < cases; ++i, ++r.cases) {
    const std::string script = generate_script(rng, config.functions);
    const ScriptFacts facts = scan_script("gen.R", script, config.functions);
    const OracleFacts want = oracle_scan(script, config.functions);

    std::set<std::pair<std::string, std::string>> packages;
    for (const auto& p : facts.packages) packages.insert({p.name, std::string(to_string(p.mechanism))});
    std::vector<std::pair<std::string, int>> randomness;
    for (const auto& c : facts.randomness_calls) randomness.emplace_back(c.function, c.line);

    const std::string where = "\n--- script ---\n" + script;
    r.expect(packages == want.packages, "package facts differ" + where);
    r.expect(randomness == want.randomness, "randomness facts differ" + where);
    r.expect(facts.seed_calls == want.seeds, "seed facts differ" + where);
    r.expect(facts.chdir_calls == want.chdirs, "chdir facts differ" + where);
  }
  return r;
}

void generate_project(const fs::path& root, std::mt19937& rng) {
  static const std::vector<std::string> dirs = {"", "", "", "inst/", "inst/image/", "R/", "data-raw/",
                                                "data/", "vignettes/", "analysis/", "docs/"};
  static const std::vector<std::string> data_ext = {"csv", "rds", "json", "xlsx", "feather", "tsv"};
  static const std::vector<std::string> other_ext = {"png", "jpg", "mp4", "wav", "docx", "html",
                                                     "md", "txt", "xyz", "bib", "pdf"};
  fs::create_directories(root);
  int counter = 0;
  auto unique_name = [&](const std::string& ext) { return segment(rng) + "_" + std::to_string(counter++) + "." + ext; };

  std::vector<std::string> data_files;
  for (int i = uniform(rng, 0, 5); i > 0; --i) {
    const std::string rel = pick(rng, dirs) + unique_name(pick(rng, data_ext));
    write_file(root / rel, "a,b\n" + std::to_string(uniform(rng, 0, 99)) + ",2\n");
    data_files.push_back(rel);
  }
  for (int i = uniform(rng, 0, 4); i > 0; --i) {
    write_file(root / (pick(rng, dirs) + unique_name(pick(rng, other_ext))), std::string(static_cast<std::size_t>(uniform(rng, 0, 300)), 'x'));
  }
  if (chance(rng, 0.6)) write_file(root / "README.md", "# project\n");
  if (chance(rng, 0.5)) write_file(root / "project.Rproj", "Version: 1.0\n");
  if (chance(rng, 0.15)) write_file(root / "sub" / "nested.Rproj", "Version: 1.0\n");

  static const std::vector<std::string> bad_paths = {"/home/me/data.csv", "~/Desktop/x.csv", "C:\\\\data\\\\y.csv",
                                                     "../outside.csv", "a/../../up.csv", "sub\\\\file.csv"};
  for (int s = uniform(rng, 0, 4); s > 0; --s) {
    const bool rmd = chance(rng, 0.3);
    const std::string dir = rmd ? pick(rng, std::vector<std::string>{"", "vignettes/", "analysis/"})
                                : pick(rng, std::vector<std::string>{"", "R/", "analysis/"});
    const std::string name = (chance(rng, 0.5) ? std::to_string(s) + "_" : std::string()) + unique_name(rmd ? "Rmd" : "R");
    std::string code;
    for (int l = uniform(rng, 1, 8); l > 0; --l) {
      switch (uniform(rng, 0, 8)) {
        case 0: code += "library(dplyr)\n"; break;
        case 1:
          if (!data_files.empty()) code += "d <- read.csv(here::here(\"" + pick(rng, data_files) + "\"))\n";
          break;
        case 2: code += "write.csv(d, \"out_" + std::to_string(uniform(rng, 0, 3)) + ".csv\")\n"; break;
        case 3: code += "x <- read.csv(\"out_" + std::to_string(uniform(rng, 0, 3)) + ".csv\")\n"; break;
        case 4: code += "set.seed(42)\n"; break;
        case 5: code += "v <- rnorm(10)\n"; break;
        case 6: code += "e <- readRDS(\"" + pick(rng, bad_paths) + "\")\n"; break;
        case 7: code += "y = c(1,2)\n"; break;
        default: code += "z <- readr::read_csv(file.path(\"data\", \"missing.csv\"))\n"; break;
      }
    }
    write_file(root / (dir + name), rmd ? "---\ntitle: x\n---\n\n```{r}\n" + code + "```\n" : code);
  }
}

namespace {

// Category sets restated from the classification table.
bool ext_in(const std::string& rel, std::initializer_list<const char*> exts) {
  const std::string ext = file_extension(rel);
  for (const char* e : exts) {
    if (ext == e) return true;
  }
  return false;
}

bool select_oracle(int kind, const std::string& arg, const std::vector<std::string>& exact, const std::string& name) {
  switch (kind) {
    case 0: return name.find(arg) != std::string::npos;
    case 1: return name.rfind(arg, 0) == 0;
    case 2: return name.size() >= arg.size() && name.compare(name.size() - arg.size(), arg.size(), arg) == 0;
    default: return std::find(exact.begin(), exact.end(), name) != exact.end();
  }
}

const std::vector<std::string> kCatalog = {
    "has_tidy_media",       "has_tidy_images",         "has_tidy_code",         "has_tidy_raw_data",
    "has_tidy_data",        "has_tidy_scripts",        "has_readme",            "has_no_lint",
    "has_proj_root",        "has_no_nested_proj_root", "has_only_used_files",   "has_clear_build_chain",
    "has_no_absolute_paths", "has_only_portable_paths", "has_no_randomness"};

const CheckOutcome* outcome(const CheckReport& report, const std::string& name) {
  for (const auto& o : report.outcomes) {
    if (to_string(o.name) == name) return &o;
  }
  return nullptr;
}

}  // namespace

PropertyResult prop_check_engine(unsigned seed, int cases) {
  PropertyResult r{"check engine"};
  std::mt19937 rng(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    TempDir dir;
    generate_project(dir.path(), rng);
    const std::string tag = " [case " + std::to_string(i) + "]";

    const auto before = snapshot(dir.path());
    const CheckReport first = proj_check(dir.path());
    r.expect(snapshot(dir.path()) == before, "proj_check modified the tree" + tag);
    const CheckReport second = proj_check(dir.path());
    r.expect(first == second, "proj_check not idempotent" + tag);
    r.expect(run_checks_serial(analyze_project(dir.path()), CheckSelection::all()) == first,
             "parallel and serial check runs differ" + tag);

    r.expect(first.outcomes.size() == kCatalog.size(), "full run missed checks" + tag);
    for (const auto& o : first.outcomes) {
      if (o.state == CheckState::Fail) r.expect(!o.evidence.empty(), "failure without evidence" + tag);
    }

    // Selection soundness.
    const int kind = uniform(rng, 0, 3);
    const std::string& source = pick(rng, kCatalog);
    const auto from = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(source.size()) - 1));
    const std::string arg = kind == 1 ? source.substr(0, from + 1)
                            : kind == 2 ? source.substr(from)
                                        : source.substr(from, static_cast<std::size_t>(uniform(rng, 1, 6)));
    std::vector<std::string> exact;
    for (const auto& n : kCatalog) {
      if (chance(rng, 0.3)) exact.push_back(n);
    }
    const CheckSelection selection = kind == 0   ? CheckSelection::contains(arg)
                                     : kind == 1 ? CheckSelection::starts_with(arg)
                                     : kind == 2 ? CheckSelection::ends_with(arg)
                                                 : CheckSelection::exact(exact);
    const CheckReport selected = proj_check(dir.path(), selection);
    std::vector<std::string> want;
    for (const auto& n : kCatalog) {
      if (select_oracle(kind, arg, exact, n)) want.push_back(n);
    }
    std::vector<std::string> got;
    for (const auto& o : selected.outcomes) {
      got.emplace_back(to_string(o.name));
      const CheckOutcome* full = outcome(first, got.back());
      r.expect(full && *full == o, "selected outcome differs from full run" + tag);
    }
    r.expect(got == want, "selection returned the wrong checks for '" + arg + "'" + tag);
    r.expect(selected.passed + selected.failed + selected.errored == selected.outcomes.size(),
             "summary counts do not add up" + tag);

    // Vacuous passes.
    const ProjectDir project = scan_project(dir.path());
    auto none = [&](std::initializer_list<const char*> exts) {
      return std::none_of(project.files.begin(), project.files.end(),
                          [&](const FileRecord& f) { return ext_in(f.rel_path, exts); });
    };
    auto passes = [&](const char* name) {
      const CheckOutcome* o = outcome(first, name);
      return o && o->state == CheckState::Pass;
    };
    if (none({"mp3", "mp4", "wav", "mov", "avi"})) r.expect(passes("has_tidy_media"), "media vacuous pass" + tag);
    if (none({"png", "jpg", "jpeg", "gif", "svg", "bmp", "tiff"})) {
      r.expect(passes("has_tidy_images"), "images vacuous pass" + tag);
    }
    if (none({"r"})) r.expect(passes("has_tidy_code"), "code vacuous pass" + tag);
    if (none({"csv", "tsv", "xls", "xlsx", "json", "xml"})) {
      r.expect(passes("has_tidy_raw_data"), "raw data vacuous pass" + tag);
    }
    if (none({"rds", "rda", "rdata", "feather", "parquet"})) r.expect(passes("has_tidy_data"), "data vacuous pass" + tag);
    if (none({"rmd"})) r.expect(passes("has_tidy_scripts"), "scripts vacuous pass" + tag);
    if (none({"r", "rmd"})) {
      for (const char* n : {"has_no_lint", "has_clear_build_chain", "has_no_absolute_paths",
                            "has_only_portable_paths", "has_no_randomness"}) {
        r.expect(passes(n), std::string(n) + " vacuous pass" + tag);
      }
    }
  }
  return r;
}

PropertyResult prop_analyzer_fixed_point(unsigned seed, int cases) {
  PropertyResult r{"analyzer fixed point"};
  std::mt19937 rng(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    TempDir dir;
    generate_project(dir.path(), rng);
    const std::string tag = " [case " + std::to_string(i) + "]";

    const auto before = snapshot(dir.path());
    const AnalysisReport report = proj_analyze(dir.path());
    r.expect(snapshot(dir.path()) == before, "proj_analyze modified the tree" + tag);

    for (const auto& m : report.moves) {
      try {
        apply_move(dir.path(), m.path_rel, m.dir_rel);
      } catch (const std::exception& e) {
        r.expect(false, std::string("move failed: ") + e.what() + tag);
      }
    }
    const AnalysisReport after = proj_analyze(dir.path());
    r.expect(after.moves.empty(), std::to_string(after.moves.size()) + " suggestions after applying all" + tag);
    r.expect(after.files.size() == report.files.size(), "moves changed the file count" + tag);

    const auto moved = snapshot(dir.path());
    proj_pkg_script(dir.path(), "install_packages.R");
    auto with_script = snapshot(dir.path());
    r.expect(with_script.erase("install_packages.R") == 1 && with_script == moved,
             "proj_pkg_script did not write exactly one file" + tag);
  }
  return r;
}

namespace {

std::string field(std::mt19937& rng) {
  static const std::vector<std::string> pieces = {"data", "/", "\t", "\n", "\\", "\\t", "é", "x.csv", " ", "\r", "NA", ""};
  std::string out;
  for (int n = uniform(rng, 0, 5); n > 0; --n) out += pick(rng, pieces);
  return out;
}

std::string timestamp(std::mt19937& rng) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "2020-08-%02dT%02d:%02d:%02dZ", uniform(rng, 1, 28), uniform(rng, 0, 23),
                uniform(rng, 0, 59), uniform(rng, 0, 59));
  return buf;
}

}  // namespace

PropertyResult prop_log(unsigned seed, int cases) {
  PropertyResult r{"log"};
  std::mt19937 rng(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    TempDir dir;
    const std::string tag = " [case " + std::to_string(i) + "]";

    log_clear(dir.path());
    r.expect(log_report(dir.path()).events.empty(), "clear on a missing log left events" + tag);

    std::vector<LogEvent> expected;
    std::string last;
    for (int b = uniform(rng, 1, 4); b > 0; --b) {
      std::vector<LogEvent> batch;
      for (int e = uniform(rng, 0, 5); e > 0; --e) {
        batch.push_back({field(rng), field(rng), "f" + field(rng), timestamp(rng)});
      }
      for (auto ev : batch) {
        if (ev.timestamp < last) ev.timestamp = last;
        last = ev.timestamp;
        expected.push_back(ev);
      }
      log_append(dir.path(), batch);
    }
    const LogReadResult read = log_report(dir.path());
    r.expect(read.events == expected, "append order not preserved" + tag);
    r.expect(read.warnings.empty(), "clean log reported warnings" + tag);

    if (fs::exists(log_path(dir.path()))) {
      std::vector<std::string> lines;
      std::istringstream in(read_file(log_path(dir.path())));
      for (std::string l; std::getline(in, l);) lines.push_back(l);
      static const std::vector<std::string> garbage = {"garbage", "a\tb", "a\tb\tc\td\te", "p\tq\tr\tnot-a-time",
                                                       "x\ty\tz\t2020-13-01T00:00:00Z"};
      const int corrupt = uniform(rng, 1, 3);
      for (int c = 0; c < corrupt; ++c) {
        const auto at = static_cast<std::ptrdiff_t>(uniform(rng, 1, static_cast<int>(lines.size())));
        lines.insert(lines.begin() + at, pick(rng, garbage));
      }
      std::string text;
      for (const auto& l : lines) text += l + "\n";
      write_file(log_path(dir.path()), text);
      const LogReadResult damaged = log_report(dir.path());
      r.expect(damaged.events == expected, "corrupt lines disturbed the good ones" + tag);
      r.expect(damaged.warnings.size() == static_cast<std::size_t>(corrupt), "one warning per corrupt line" + tag);
    }

    log_clear(dir.path());
    log_clear(dir.path());
    r.expect(log_report(dir.path()).events.empty(), "log not empty after clear" + tag);
    r.expect(!fs::exists(log_path(dir.path())), "log file survives clear" + tag);
  }
  return r;
}

PropertyResult prop_sandbox(unsigned seed, int cases) {
  PropertyResult r{"sandbox"};
  std::mt19937 rng(seed);
  for (int i = 0; i < cases; ++i, ++r.cases) {
    TempDir dir("proj_" + std::to_string(i));
    generate_project(dir.path(), rng);
    if (chance(rng, 0.5)) log_append(dir.path(), {{"x.csv", "", "utils::read.csv", "2020-08-18T18:46:25Z"}});
    if (chance(rng, 0.3) && fs::exists(dir / "README.md")) fs::create_symlink("README.md", dir / "link.md");
    const std::string tag = " [case " + std::to_string(i) + "]";

    fs::path copy;
    try {
      copy = sandbox(dir.path());
    } catch (const std::exception& e) {
      r.expect(false, std::string("sandbox failed: ") + e.what() + tag);
      continue;
    }
    auto original = snapshot(dir.path());
    std::erase_if(original, [](const auto& kv) { return kv.first.starts_with(".reprolint"); });
    r.expect(snapshot(copy) == original, "sandbox copy differs from the project" + tag);
    r.expect(copy.filename() == dir.path().filename(), "sandbox renamed the project" + tag);
    r.expect(proj_check(copy) == proj_check(dir.path()), "check outcomes differ inside the sandbox" + tag);
    fs::remove_all(copy.parent_path());
  }
  return r;
}

}  // namespace testing
