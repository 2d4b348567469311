#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reprolint/analyzer.hpp"
#include "reprolint/checks.hpp"
#include "reprolint/event_log.hpp"
#include "reprolint/guard.hpp"
#include "reprolint/paths.hpp"
#include "reprolint/project.hpp"

namespace reprolint {

// JSON documents. Field names match the struct members; enums are written
// with their kebab-case names. Each from_json accepts exactly what to_json
// writes.
void to_json(nlohmann::json& j, const FileRecord& f);
void from_json(const nlohmann::json& j, FileRecord& f);
void to_json(nlohmann::json& j, const PathFinding& f);
void from_json(const nlohmann::json& j, PathFinding& f);
void to_json(nlohmann::json& j, const PackageRef& p);
void from_json(const nlohmann::json& j, PackageRef& p);
void to_json(nlohmann::json& j, const MoveSuggestion& m);
void from_json(const nlohmann::json& j, MoveSuggestion& m);
void to_json(nlohmann::json& j, const AnalysisReport& r);
void from_json(const nlohmann::json& j, AnalysisReport& r);
void to_json(nlohmann::json& j, const CheckOutcome& o);
void from_json(const nlohmann::json& j, CheckOutcome& o);
void to_json(nlohmann::json& j, const CheckReport& r);
void from_json(const nlohmann::json& j, CheckReport& r);
void to_json(nlohmann::json& j, const LogEvent& e);
void from_json(const nlohmann::json& j, LogEvent& e);
void to_json(nlohmann::json& j, const GuardIssue& i);
void from_json(const nlohmann::json& j, GuardIssue& i);
void to_json(nlohmann::json& j, const GuardVerdict& v);
void from_json(const nlohmann::json& j, GuardVerdict& v);

/// "39", "4.94K", "188.29K", "1.50M" (1024-based).
std::string human_size(std::uintmax_t bytes);

void render_check_report(std::ostream& out, const CheckReport& report);
void render_analysis(std::ostream& out, const AnalysisReport& report);
void render_findings(std::ostream& out, const std::vector<PathFinding>& findings);
void render_log(std::ostream& out, const std::vector<LogEvent>& events);
void render_guard(std::ostream& out, const GuardVerdict& verdict);

}  // namespace reprolint
