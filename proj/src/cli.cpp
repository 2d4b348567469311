#include "reprolint/cli.hpp"

#include <algorithm>
#include <filesystem>

#include <CLI11.hpp>
#include <json.hpp>

#include "reprolint/analyzer.hpp"
#include "reprolint/checks.hpp"
#include "reprolint/event_log.hpp"
#include "reprolint/guard.hpp"
#include "reprolint/paths.hpp"
#include "reprolint/report.hpp"

namespace reprolint::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
  std::string format = "human";
  std::string root = ".";
  std::vector<std::string> targets;

  std::vector<std::string> only;
  std::string contains;
  std::string starts_with;
  std::string ends_with;
  bool strict = false;

  std::string output = "install_packages.R";
  std::string runner = std::string(kDefaultRunner);
};

bool json_mode(const Options& o) { return o.format == "json"; }

void add_format(CLI::App* cmd, Options& o) {
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json"}));
}

void add_root(CLI::App* cmd, Options& o) {
  cmd->add_option("--root", o.root, "Project root directory");
}

void add_project(CLI::App* cmd, Options& o) {
  cmd->add_option("project", o.root, "Project root directory (default: .)");
  add_root(cmd, o);
}

CheckSelection selection_from(const Options& o) {
  const int given = !o.only.empty() + !o.contains.empty() + !o.starts_with.empty() + !o.ends_with.empty();
  if (given > 1) throw CLI::ValidationError("selection", "use at most one of --only/--contains/--starts-with/--ends-with");
  if (!o.only.empty()) return CheckSelection::exact(o.only);
  if (!o.contains.empty()) return CheckSelection::contains(o.contains);
  if (!o.starts_with.empty()) return CheckSelection::starts_with(o.starts_with);
  if (!o.ends_with.empty()) return CheckSelection::ends_with(o.ends_with);
  return CheckSelection::all();
}

// Directory of the current working directory relative to root, "" when the
// cwd is not inside root.
std::string cwd_base(const fs::path& root) {
  const auto abs_root = fs::weakly_canonical(fs::absolute(root));
  const auto rel = fs::current_path().lexically_relative(abs_root).generic_string();
  if (rel.empty() || rel == "." || rel.starts_with("..")) return {};
  return rel;
}

int cmd_list_checks(const Options& o, std::ostream& out) {
  if (json_mode(o)) {
    json names = json::array();
    for (auto c : list_checks()) names.push_back(to_string(c));
    out << names.dump(2) << '\n';
  } else {
    for (auto c : list_checks()) out << to_string(c) << '\n';
  }
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  const CheckSelection selection = selection_from(o);
  const CheckReport report = proj_check(o.root, selection);
  if (json_mode(o)) {
    out << json(report).dump(2) << '\n';
  } else {
    render_check_report(out, report);
  }
  if (o.strict) {
    for (const auto& outcome : report.outcomes) {
      if (outcome.state != CheckState::Fail) continue;
      if (outcome.name == CheckName::HasNoAbsolutePaths) err << kAbsolutePathsMessage << '\n';
      if (outcome.name == CheckName::HasOnlyPortablePaths) err << kOutsidePathsMessage << '\n';
    }
  }
  return report.failed + report.errored == 0 ? kOk : kFindings;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const AnalysisReport report = proj_analyze(o.root);
  if (json_mode(o)) {
    out << json(report).dump(2) << '\n';
  } else {
    render_analysis(out, report);
  }
  return kOk;
}

int cmd_path(const Options& o, std::ostream& out, std::ostream& err) {
  const std::string base = cwd_base(o.root);
  std::vector<std::string> paths;
  for (const auto& p : o.targets) {
    if (p.empty()) throw CLI::ValidationError("path", "empty path");
    if (is_url(p)) {
      err << "note: skipping URL " << p << '\n';
      continue;
    }
    paths.push_back(p);
  }
  const auto findings = check_path(paths, base);
  std::string error;
  if (o.strict) {
    try {
      raise_for_findings(findings);
    } catch (const PathError& e) {
      error = e.what();
    }
  }
  if (json_mode(o)) {
    json doc{{"findings", findings}, {"error", error.empty() ? json(nullptr) : json(error)}};
    out << doc.dump(2) << '\n';
  } else if (!o.strict) {
    render_findings(out, findings);
  }
  if (!error.empty()) err << error << '\n';
  return findings.empty() ? kOk : kFindings;
}

int cmd_deps(const Options& o, std::ostream& out) {
  const fs::path written = proj_pkg_script(o.root, o.output);
  if (json_mode(o)) {
    out << json{{"script", written.string()}}.dump(2) << '\n';
  } else {
    out << written.string() << '\n';
  }
  return kOk;
}

int cmd_sandbox(const Options& o, std::ostream& out) {
  const fs::path dir = sandbox(o.root);
  if (json_mode(o)) {
    out << json{{"sandbox", dir.string()}}.dump(2) << '\n';
  } else {
    out << dir.string() << '\n';
  }
  return kOk;
}

fs::path script_arg(const Options& o) {
  if (o.targets.size() != 1) throw CLI::ValidationError("script", "expected one script");
  return o.targets.front();
}

int cmd_guard_scan(const Options& o, std::ostream& out) {
  const GuardVerdict verdict = guard_scan(script_arg(o), o.root);
  if (json_mode(o)) {
    out << json(verdict).dump(2) << '\n';
  } else {
    render_guard(out, verdict);
  }
  return verdict.refused() ? kGuardRefused : kOk;
}

int cmd_guard_run(const Options& o, std::ostream& out, std::ostream& err) {
  const GuardRunResult result = guard_run(script_arg(o), o.root, o.runner);
  if (json_mode(o)) {
    out << json{{"verdict", result.verdict},
                {"launched", result.launched},
                {"exit_status", result.exit_status}}
               .dump(2)
        << '\n';
  } else {
    render_guard(err, result.verdict);
  }
  if (!result.launched) return kGuardRefused;
  return result.exit_status;
}

int cmd_log_show(const Options& o, std::ostream& out, std::ostream& err) {
  const LogReadResult log = log_report(o.root);
  for (const auto& w : log.warnings) err << "warning: " << w << '\n';
  if (json_mode(o)) {
    out << json(log.events).dump(2) << '\n';
  } else {
    render_log(out, log.events);
  }
  return kOk;
}

int cmd_mv(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.targets.size() != 2) throw CLI::ValidationError("mv", "expected <src> <dstdir>");
  try {
    const std::string moved = apply_move(o.root, o.targets[0], o.targets[1]);
    if (json_mode(o)) {
      out << json{{"from", o.targets[0]}, {"to", moved}}.dump(2) << '\n';
    } else {
      out << o.targets[0] << " -> " << moved << '\n';
    }
    return kOk;
  } catch (const MoveError& e) {
    err << "error: " << e.what() << '\n';
    return kFindings;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"reprolint: reproducibility checks for R data-analysis projects", "reprolint"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-checks", "List the available checks");
  add_format(list, o);

  auto* check = app.add_subcommand("check", "Run reproducibility checks");
  add_project(check, o);
  add_format(check, o);
  check->add_option("--only", o.only, "Run exactly these checks")->delimiter(',');
  check->add_option("--contains", o.contains, "Run checks whose name contains this text");
  check->add_option("--starts-with", o.starts_with, "Run checks whose name starts with this text");
  check->add_option("--ends-with", o.ends_with, "Run checks whose name ends with this text");
  check->add_flag("--strict", o.strict, "Also raise path errors on stderr");

  auto* analyze = app.add_subcommand("analyze", "Report packages, files, moves and problematic paths");
  add_project(analyze, o);
  add_format(analyze, o);

  auto* path = app.add_subcommand("path", "Check file paths for portability");
  path->add_option("paths", o.targets, "Paths to check")->required();
  add_root(path, o);
  add_format(path, o);
  o.strict = false;
  bool path_lenient = false;
  path->add_flag("--no-strict", path_lenient, "Report findings instead of raising an error");

  auto* deps = app.add_subcommand("deps", "Write a script installing every referenced package");
  add_project(deps, o);
  add_format(deps, o);
  deps->add_option("-o,--output", o.output, "Script path, relative to the project root");

  auto* sbox = app.add_subcommand("sandbox", "Copy the project to a temporary directory");
  add_project(sbox, o);
  add_format(sbox, o);

  auto* guard = app.add_subcommand("guard", "Screen a script before running it");
  guard->require_subcommand(1);
  auto* gscan = guard->add_subcommand("scan", "Report blocking problems and log I/O");
  gscan->add_option("script", o.targets)->required();
  add_root(gscan, o);
  add_format(gscan, o);
  auto* grun = guard->add_subcommand("run", "Run a script unless the guard blocks it");
  grun->add_option("script", o.targets)->required();
  add_root(grun, o);
  add_format(grun, o);
  grun->add_option("--runner", o.runner, "Runner command; {script} is replaced by the script path");

  auto* log = app.add_subcommand("log", "Show or clear the event log");
  log->require_subcommand(1);
  auto* lshow = log->add_subcommand("show", "Show logged events");
  add_root(lshow, o);
  add_format(lshow, o);
  auto* lclear = log->add_subcommand("clear", "Erase the log");
  add_root(lclear, o);

  auto* mv = app.add_subcommand("mv", "Move a file into a directory, creating it");
  mv->add_option("paths", o.targets, "<src> <dstdir>")->required()->expected(2);
  add_root(mv, o);
  add_format(mv, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (*list) return cmd_list_checks(o, out);
    if (*check) return cmd_check(o, out, err);
    if (*analyze) return cmd_analyze(o, out);
    if (*path) {
      o.strict = !path_lenient;
      return cmd_path(o, out, err);
    }
    if (*deps) return cmd_deps(o, out);
    if (*sbox) return cmd_sandbox(o, out);
    if (*gscan) return cmd_guard_scan(o, out);
    if (*grun) return cmd_guard_run(o, out, err);
    if (*lshow) return cmd_log_show(o, out, err);
    if (*lclear) {
      log_clear(o.root);
      return kOk;
    }
    if (*mv) return cmd_mv(o, out, err);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnknownCheckError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ScanError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RunnerNotFound& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  err << app.help();
  return kUsage;
}

}  // namespace reprolint::cli
