#include <doctest.h>

#include "properties.hpp"
#include "reprolint/event_log.hpp"

using namespace reprolint;
using testing::TempDir;

TEST_CASE("fresh project has an empty log") {
  TempDir dir;
  const auto r = log_report(dir.path());
  CHECK(r.events.empty());
  CHECK(r.warnings.empty());
  CHECK(log_path(dir.path()) == dir / ".reprolint/log.tsv");
}

TEST_CASE("append, read back, clear") {
  TempDir dir;
  const LogEvent a{"package:purrr", "", "base::library", "2020-08-18T18:46:25Z"};
  const LogEvent b{"mice.csv", "/p/mice.csv", "readr::read_csv", "2020-08-18T18:46:26Z"};
  log_append(dir.path(), {a});
  log_append(dir.path(), {b});
  CHECK(log_report(dir.path()).events == std::vector<LogEvent>{a, b});

  const std::string text = testing::read_file(log_path(dir.path()));
  CHECK(text ==
        "path\tpath_abs\tfunc\ttimestamp\n"
        "package:purrr\t\tbase::library\t2020-08-18T18:46:25Z\n"
        "mice.csv\t/p/mice.csv\treadr::read_csv\t2020-08-18T18:46:26Z\n");

  log_clear(dir.path());
  CHECK(log_report(dir.path()).events.empty());
  CHECK_NOTHROW(log_clear(dir.path()));
}

TEST_CASE("timestamps never go backwards") {
  TempDir dir;
  log_append(dir.path(), {{"a", "", "f", "2021-01-01T00:00:10Z"}});
  log_append(dir.path(), {{"b", "", "f", "2021-01-01T00:00:05Z"}});
  const auto events = log_report(dir.path()).events;
  REQUIRE(events.size() == 2);
  CHECK(events[1].timestamp == "2021-01-01T00:00:10Z");
}

TEST_CASE("fields with separators survive") {
  TempDir dir;
  const LogEvent odd{"a\tb\nc\\d", "", "f", "2021-01-01T00:00:00Z"};
  log_append(dir.path(), {odd});
  CHECK(log_report(dir.path()).events == std::vector<LogEvent>{odd});
  CHECK(unescape_field(escape_field("x\\ty\t\r")) == "x\\ty\t\r");
}

TEST_CASE("corrupt lines are skipped with a warning") {
  TempDir dir;
  testing::write_file(log_path(dir.path()),
                      "path\tpath_abs\tfunc\ttimestamp\nok\t\tf\t2021-01-01T00:00:00Z\nbroken line\n");
  const auto r = log_report(dir.path());
  CHECK(r.events.size() == 1);
  CHECK(r.warnings == std::vector<std::string>{"skipping corrupt log line 3"});
}

TEST_CASE("out-of-range timestamps are corrupt") {
  TempDir dir;
  testing::write_file(log_path(dir.path()),
                      "path\tpath_abs\tfunc\ttimestamp\na\t\tf\t2020-13-01T00:00:00Z\nb\t\tf\t2020-01-01T24:00:00Z\n"
                      "c\t\tf\t2020-01-00T00:00:00Z\nd\t\tf\t2020-12-31T23:59:59Z\n");
  const auto r = log_report(dir.path());
  REQUIRE(r.events.size() == 1);
  CHECK(r.events[0].path == "d");
  CHECK(r.warnings.size() == 3);
}

TEST_CASE("timestamp format") {
  const std::string ts = now_timestamp();
  CHECK(ts.size() == 20);
  CHECK(ts[4] == '-');
  CHECK(ts[10] == 'T');
  CHECK(ts.back() == 'Z');
}

TEST_CASE("property: log") {
  const auto r = testing::prop_log(5);
  CHECK(r.cases >= testing::kMinCases);
  for (const auto& f : r.failures) FAIL_CHECK(f);
}
