#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace freecat {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

enum class Verdict { HoldsConstructively, FailsWithWitness, NotApplicable };

std::string_view to_string(Verdict v);
// Throws ParseError.
Verdict parse_verdict(std::string_view s);

// Stated in every report.
inline constexpr std::string_view kHonestyNote =
    "constructive direction certified at the stated bound; failures are witnessed in the base "
    "category; unbounded nonexistence is never claimed";

struct PropertyReport {
  std::string name;
  Verdict verdict = Verdict::NotApplicable;
  Json payload = Json::object();
  int bound = 0;
  std::string note{kHonestyNote};
  bool operator==(const PropertyReport&) const = default;
};

struct ReportDocument {
  int format_version = kFormatVersion;
  std::string tool_version{kToolVersion};
  std::string input_digest;
  int bound = 0;
  int max_shape = 0;
  bool dual = false;
  std::vector<std::string> closure;
  Json category = Json::object();  // names, for rendering
  Json extras = Json::object();    // constructions requested on the command line
  std::vector<PropertyReport> reports;
  bool operator==(const ReportDocument&) const = default;
};

Json to_json(const PropertyReport& r);
PropertyReport report_from_json(const Json& j);
Json to_json(const ReportDocument& d);
ReportDocument document_from_json(const Json& j);

std::string render_machine(const ReportDocument& d);
// Throws ParseError.
ReportDocument parse_machine(std::string_view text);
std::string render_text(const ReportDocument& d);

// FNV-1a, 64-bit, as 16 hex digits.
std::string digest(std::string_view bytes);

}  // namespace freecat
