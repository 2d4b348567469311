#include <doctest.h>

#include <sstream>

#include "properties.hpp"
#include "reprolint/cli.hpp"
#include "reprolint/report.hpp"

using namespace reprolint;
using nlohmann::json;
using testing::TempDir;
using testing::write_file;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kMiceps = testing::fixture_dir("project_miceps").string();

}  // namespace

TEST_CASE("list-checks") {
  const Run r = run({"list-checks"});
  CHECK(r.code == 0);
  std::string expected;
  for (auto c : list_checks()) expected += std::string(to_string(c)) + "\n";
  CHECK(r.out == expected);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 15);
  CHECK(json::parse(run({"list-checks", "--format", "json"}).out).size() == 15);
}

TEST_CASE("check with a selection") {
  const Run r = run({"check", kMiceps, "--contains", "paths"});
  CHECK(r.code == 0);
  CHECK(r.out.find("Reproducibility checks passed: 2") != std::string::npos);
  CHECK(run({"check", "--root", kMiceps, "--only", "has_readme,has_proj_root"}).code == 0);
  CHECK(run({"check", kMiceps, "--starts-with", "has_tidy"}).code == 1);
  CHECK(run({"check", kMiceps}).code == 1);
}

TEST_CASE("check json round-trips") {
  const Run r = run({"check", kMiceps, "--format", "json"});
  CHECK(json::parse(r.out).get<CheckReport>() == proj_check(kMiceps));
}

TEST_CASE("usage errors") {
  Run r = run({"frobnicate"});
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == 2);
  CHECK(run({"check", kMiceps, "--bogus"}).code == 2);
  CHECK(run({"check", kMiceps, "--format", "xml"}).code == 2);
  r = run({"check", kMiceps, "--only", "has_magic"});
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown check: has_magic") != std::string::npos);
  CHECK(run({"check", kMiceps, "--contains", "a", "--ends-with", "b"}).code == 2);
  CHECK(run({"check", "/definitely/not/here"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("path transcripts") {
  Run r = run({"path", "project_miceps"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  r = run({"path", "~/Desktop/my_data.csv"});
  CHECK(r.code == 1);
  CHECK(r.err == "Detected absolute paths\n");
  r = run({"path", std::filesystem::current_path().string()});
  CHECK(r.code == 1);
  CHECK(r.err == "Detected absolute paths\n");
  r = run({"path", "../fertile.Rmd"});
  CHECK(r.code == 1);
  CHECK(r.err == "Detected paths that lead outside the project directory\n");
  r = run({"path", "../fertile.Rmd", "--no-strict"});
  CHECK(r.code == 1);
  CHECK(r.err.empty());
  CHECK(r.out.find("outside-project") != std::string::npos);
  r = run({"path", "a/b.csv", "/x", "--format", "json"});
  const json j = json::parse(r.out);
  CHECK(j["error"] == "Detected absolute paths");
  CHECK(j["findings"].get<std::vector<PathFinding>>().size() == 1);
}

TEST_CASE("analyze") {
  Run r = run({"analyze", kMiceps});
  CHECK(r.code == 0);
  CHECK(r.out.find("-- Suggestions for moving files (7)") != std::string::npos);
  r = run({"analyze", kMiceps, "--format", "json"});
  CHECK(json::parse(r.out).get<AnalysisReport>() == proj_analyze(kMiceps));
}

TEST_CASE("deps") {
  TempDir dir;
  testing::copy_tree(kMiceps, dir.path());
  Run r = run({"deps", dir.path().string()});
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "install_packages.R"));
  r = run({"deps", dir.path().string(), "-o", "setup.R", "--format", "json"});
  CHECK(json::parse(r.out)["script"] == (dir / "setup.R").string());
}

TEST_CASE("sandbox") {
  const Run r = run({"sandbox", kMiceps});
  CHECK(r.code == 0);
  const std::filesystem::path copy = r.out.substr(0, r.out.size() - 1);
  CHECK(copy.filename() == "project_miceps");
  CHECK(testing::snapshot(copy) == testing::snapshot(kMiceps));
  std::filesystem::remove_all(copy.parent_path());
}

TEST_CASE("guard subcommands") {
  TempDir dir;
  write_file(dir / "bad.R", "setwd(\"~/Desktop\")\n");
  write_file(dir / "good.R", "library(purrr)\n");
  const std::string root = dir.path().string();

  Run r = run({"guard", "scan", (dir / "bad.R").string(), "--root", root});
  CHECK(r.code == 4);
  CHECK(r.out == "bad.R:1: Error: setwd() is likely to break reproducibility. Use here::here() instead.\n");

  r = run({"guard", "run", (dir / "bad.R").string(), "--root", root, "--runner", "touch sentinel"});
  CHECK(r.code == 4);
  CHECK_FALSE(std::filesystem::exists(dir / "sentinel"));

  r = run({"guard", "run", (dir / "good.R").string(), "--root", root, "--runner", "sh -c 'exit 5'"});
  CHECK(r.code == 5);
  r = run({"guard", "run", "good.R", "--root", root, "--runner", "no-such-runner-xyz"});
  CHECK(r.code == 3);

  r = run({"guard", "scan", (dir / "good.R").string(), "--root", root, "--format", "json"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out).get<GuardVerdict>().blocking.empty());

  r = run({"log", "show", "--root", root, "--format", "json"});
  const auto events = json::parse(r.out).get<std::vector<LogEvent>>();
  CHECK(events.size() == 3);
  r = run({"log", "show", "--root", root});
  CHECK(r.out.find("package:purrr") != std::string::npos);
  CHECK(run({"log", "clear", "--root", root}).code == 0);
  CHECK(json::parse(run({"log", "show", "--root", root, "--format", "json"}).out).empty());
  CHECK(run({"guard"}).code == 2);
}

TEST_CASE("mv") {
  TempDir dir;
  write_file(dir / "mice.csv", "x");
  write_file(dir / "sub/mice.csv", "y");
  const std::string root = dir.path().string();
  Run r = run({"mv", "mice.csv", "data-raw", "--root", root});
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(dir / "data-raw/mice.csv"));
  r = run({"mv", "sub/mice.csv", "data-raw", "--root", root});
  CHECK(r.code == 1);
  CHECK(r.err.find("error:") == 0);
  CHECK(run({"mv", "only-one", "--root", root}).code == 2);
}
