#include <algorithm>
#include <cstdio>

#include "reprolint/report.hpp"

namespace reprolint {

namespace {

using Row = std::vector<std::string>;

std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

void table(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    width[c] = display_width(header[c]);
    for (const auto& r : rows) width[c] = std::max(width[c], display_width(r[c]));
  }
  auto line = [&](const Row& r) {
    std::string text;
    for (std::size_t c = 0; c < r.size(); ++c) {
      text += r[c];
      if (c + 1 < r.size()) text.append(width[c] - display_width(r[c]) + 2, ' ');
    }
    out << "  " << text << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void heading(std::ostream& out, const std::string& title) { out << "-- " << title << '\n'; }

}  // namespace

std::string human_size(std::uintmax_t bytes) {
  if (bytes < 1024) return std::to_string(bytes);
  static constexpr const char* kUnits[] = {"K", "M", "G", "T", "P"};
  double value = static_cast<double>(bytes) / 1024.0;
  std::size_t unit = 0;
  while (value >= 1024.0 && unit + 1 < std::size(kUnits)) {
    value /= 1024.0;
    ++unit;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%s", value, kUnits[unit]);
  return buf;
}

void render_check_report(std::ostream& out, const CheckReport& report) {
  out << "== Running reproducibility checks for " << report.project << '\n';
  for (const auto& o : report.outcomes) {
    const char* mark = o.state == CheckState::Pass ? "v" : o.state == CheckState::Fail ? "x" : "!";
    out << mark << ' ' << check_description(o.name) << " (" << to_string(o.name) << ")\n";
    if (o.state == CheckState::Pass) continue;
    out << "    problem:  " << o.problem << '\n';
    out << "    solution: " << o.solution << '\n';
    out << "    help:     " << o.help << '\n';
    for (const auto& e : o.evidence) out << "    - " << e << '\n';
  }
  out << "== Summary of reproducibility checks\n";
  out << "v Reproducibility checks passed: " << report.passed << '\n';
  if (report.failed) out << "x Reproducibility checks failed: " << report.failed << '\n';
  if (report.errored) out << "! Reproducibility checks with errors: " << report.errored << '\n';
}

void render_analysis(std::ostream& out, const AnalysisReport& report) {
  out << "== Analysis of reproducibility for " << report.project << '\n';

  heading(out, "Packages referenced in source code (" + std::to_string(report.packages.size()) + ")");
  std::vector<Row> rows;
  for (const auto& p : report.packages) {
    std::string used;
    for (const auto& u : p.used_in) used += (used.empty() ? "" : ", ") + u;
    rows.push_back({p.package, std::to_string(p.n), used});
  }
  table(out, {"package", "N", "used_in"}, rows);

  heading(out, "Files present in directory (" + std::to_string(report.files.size()) + ")");
  rows.clear();
  for (const auto& f : report.files) rows.push_back({f.rel_path, f.ext, human_size(f.size), f.mime});
  table(out, {"file", "ext", "size", "mime"}, rows);

  heading(out, "Suggestions for moving files (" + std::to_string(report.moves.size()) + ")");
  rows.clear();
  for (const auto& m : report.moves) rows.push_back({m.path_rel, m.dir_rel, m.cmd});
  table(out, {"path_rel", "dir_rel", "cmd"}, rows);

  heading(out, "Problematic paths logged");
  if (report.paths_logged.empty()) {
    out << "  NULL\n";
  } else {
    render_findings(out, report.paths_logged);
  }
}

void render_findings(std::ostream& out, const std::vector<PathFinding>& findings) {
  std::vector<Row> rows;
  for (const auto& f : findings) rows.push_back({f.path, std::string(to_string(f.problem)), f.solution});
  table(out, {"path", "problem", "solution"}, rows);
}

void render_log(std::ostream& out, const std::vector<LogEvent>& events) {
  std::vector<Row> rows;
  for (const auto& e : events) {
    rows.push_back({e.path, e.path_abs.empty() ? "NA" : e.path_abs, e.func, e.timestamp});
  }
  table(out, {"path", "path_abs", "func", "timestamp"}, rows);
}

void render_guard(std::ostream& out, const GuardVerdict& verdict) {
  for (const auto& b : verdict.blocking) {
    out << verdict.script << ':' << b.line << ": Error: " << b.message << '\n';
  }
  for (const auto& w : verdict.warnings) {
    out << verdict.script << ':' << w.line << ": Warning: " << w.message << '\n';
  }
}

}  // namespace reprolint
