#include "reprolint/report.hpp"

namespace reprolint {

using nlohmann::json;

namespace {

template <typename Enum, typename Parse>
Enum parse_enum(const json& j, const char* key, Parse parse) {
  const auto text = j.at(key).get<std::string>();
  auto value = parse(text);
  if (!value) throw json::other_error::create(501, std::string("bad ") + key + ": " + text, &j);
  return *value;
}

}  // namespace

void to_json(json& j, const FileRecord& f) {
  j = json{{"rel_path", f.rel_path}, {"ext", f.ext},   {"size", f.size},
           {"mime", f.mime},         {"category", to_string(f.category)}};
}

void from_json(const json& j, FileRecord& f) {
  j.at("rel_path").get_to(f.rel_path);
  j.at("ext").get_to(f.ext);
  j.at("size").get_to(f.size);
  j.at("mime").get_to(f.mime);
  f.category = parse_enum<FileCategory>(j, "category", parse_category);
}

void to_json(json& j, const PathFinding& f) {
  j = json{{"path", f.path}, {"problem", to_string(f.problem)}, {"solution", f.solution}};
}

void from_json(const json& j, PathFinding& f) {
  j.at("path").get_to(f.path);
  f.problem = parse_enum<PathProblem>(j, "problem", parse_path_problem);
  j.at("solution").get_to(f.solution);
}

void to_json(json& j, const PackageRef& p) {
  j = json{{"package", p.package}, {"n", p.n}, {"used_in", p.used_in}};
}

void from_json(const json& j, PackageRef& p) {
  j.at("package").get_to(p.package);
  j.at("n").get_to(p.n);
  j.at("used_in").get_to(p.used_in);
}

void to_json(json& j, const MoveSuggestion& m) {
  j = json{{"path_rel", m.path_rel}, {"dir_rel", m.dir_rel}, {"cmd", m.cmd}};
}

void from_json(const json& j, MoveSuggestion& m) {
  j.at("path_rel").get_to(m.path_rel);
  j.at("dir_rel").get_to(m.dir_rel);
  j.at("cmd").get_to(m.cmd);
}

void to_json(json& j, const AnalysisReport& r) {
  j = json{{"project", r.project},
           {"packages", r.packages},
           {"files", r.files},
           {"moves", r.moves},
           {"paths_logged", r.paths_logged}};
}

void from_json(const json& j, AnalysisReport& r) {
  j.at("project").get_to(r.project);
  j.at("packages").get_to(r.packages);
  j.at("files").get_to(r.files);
  j.at("moves").get_to(r.moves);
  j.at("paths_logged").get_to(r.paths_logged);
}

void to_json(json& j, const CheckOutcome& o) {
  j = json{{"name", to_string(o.name)}, {"state", to_string(o.state)}, {"problem", o.problem},
           {"solution", o.solution},    {"help", o.help},                {"evidence", o.evidence}};
}

void from_json(const json& j, CheckOutcome& o) {
  o.name = parse_check_name(j.at("name").get<std::string>());
  o.state = parse_enum<CheckState>(j, "state", parse_check_state);
  j.at("problem").get_to(o.problem);
  j.at("solution").get_to(o.solution);
  j.at("help").get_to(o.help);
  j.at("evidence").get_to(o.evidence);
}

void to_json(json& j, const CheckReport& r) {
  j = json{{"project", r.project},
           {"outcomes", r.outcomes},
           {"summary", {{"passed", r.passed}, {"failed", r.failed}, {"errored", r.errored}}}};
}

void from_json(const json& j, CheckReport& r) {
  j.at("project").get_to(r.project);
  j.at("outcomes").get_to(r.outcomes);
  const auto& s = j.at("summary");
  s.at("passed").get_to(r.passed);
  s.at("failed").get_to(r.failed);
  s.at("errored").get_to(r.errored);
}

void to_json(json& j, const LogEvent& e) {
  j = json{{"path", e.path}, {"path_abs", e.path_abs}, {"func", e.func}, {"timestamp", e.timestamp}};
}

void from_json(const json& j, LogEvent& e) {
  j.at("path").get_to(e.path);
  j.at("path_abs").get_to(e.path_abs);
  j.at("func").get_to(e.func);
  j.at("timestamp").get_to(e.timestamp);
}

void to_json(json& j, const GuardIssue& i) { j = json{{"line", i.line}, {"message", i.message}}; }

void from_json(const json& j, GuardIssue& i) {
  j.at("line").get_to(i.line);
  j.at("message").get_to(i.message);
}

void to_json(json& j, const GuardVerdict& v) {
  j = json{{"script", v.script}, {"blocking", v.blocking}, {"warnings", v.warnings}};
}

void from_json(const json& j, GuardVerdict& v) {
  j.at("script").get_to(v.script);
  j.at("blocking").get_to(v.blocking);
  j.at("warnings").get_to(v.warnings);
}

}  // namespace reprolint
