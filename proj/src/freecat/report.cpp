#include "freecat/report.hpp"

#include <cstdint>
#include <cstdio>
#include <sstream>

#include "freecat/error.hpp"

namespace freecat {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsConstructively: return "holds-constructively";
    case Verdict::FailsWithWitness: return "fails-with-witness";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "not-applicable";
}

Verdict parse_verdict(std::string_view s) {
  for (Verdict v : {Verdict::HoldsConstructively, Verdict::FailsWithWitness, Verdict::NotApplicable})
    if (to_string(v) == s) return v;
  throw Error(ErrorCode::ParseError, "unknown verdict '" + std::string(s) + "'");
}

Json to_json(const PropertyReport& r) {
  Json j;
  j["name"] = r.name;
  j["verdict"] = to_string(r.verdict);
  j["bound"] = r.bound;
  j["note"] = r.note;
  j["payload"] = r.payload;
  return j;
}

PropertyReport report_from_json(const Json& j) {
  PropertyReport r;
  r.name = j.at("name").get<std::string>();
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  r.bound = j.at("bound").get<int>();
  r.note = j.at("note").get<std::string>();
  r.payload = j.at("payload");
  return r;
}

Json to_json(const ReportDocument& d) {
  Json j;
  j["format_version"] = d.format_version;
  j["tool_version"] = d.tool_version;
  j["input_digest"] = d.input_digest;
  j["bound"] = d.bound;
  j["max_shape"] = d.max_shape;
  j["dual"] = d.dual;
  j["closure"] = d.closure;
  j["category"] = d.category;
  j["extras"] = d.extras;
  j["reports"] = Json::array();
  for (const auto& r : d.reports) j["reports"].push_back(to_json(r));
  return j;
}

ReportDocument document_from_json(const Json& j) {
  ReportDocument d;
  d.format_version = j.at("format_version").get<int>();
  if (d.format_version != kFormatVersion)
    throw Error(ErrorCode::ParseError, "unsupported format_version " + std::to_string(d.format_version));
  d.tool_version = j.at("tool_version").get<std::string>();
  d.input_digest = j.at("input_digest").get<std::string>();
  d.bound = j.at("bound").get<int>();
  d.max_shape = j.at("max_shape").get<int>();
  d.dual = j.at("dual").get<bool>();
  d.closure = j.at("closure").get<std::vector<std::string>>();
  d.category = j.at("category");
  d.extras = j.at("extras");
  for (const auto& r : j.at("reports")) d.reports.push_back(report_from_json(r));
  return d;
}

std::string render_machine(const ReportDocument& d) { return to_json(d).dump(2) + "\n"; }

ReportDocument parse_machine(std::string_view text) {
  try {
    return document_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

namespace {

std::string compact(const Json& j, std::size_t limit = 160) {
  std::string s = j.dump();
  if (s.size() > limit) s = s.substr(0, limit) + " ...";
  return s;
}

}  // namespace

std::string render_text(const ReportDocument& d) {
  std::ostringstream out;
  out << "freecat " << d.tool_version << "  input " << d.input_digest << "  bound " << d.bound
      << "  max-shape " << d.max_shape << (d.dual ? "  (dual)" : "") << "\n";
  if (d.category.contains("objects")) {
    out << "objects:";
    for (const auto& o : d.category["objects"]) out << " " << o.get<std::string>();
    out << "\nmorphisms: " << d.category["morphisms"].size() << "\n";
  }
  for (const auto& c : d.closure) out << "closure: " << c << "\n";
  for (const auto& [key, value] : d.extras.items()) out << key << ": " << compact(value, 400) << "\n";
  for (const auto& r : d.reports) {
    out << "\n[" << to_string(r.verdict) << "] " << r.name;
    if (r.bound > 0) out << "  (bound " << r.bound << ")";
    out << "\n";
    if (r.payload.contains("summary")) out << "  " << r.payload["summary"].get<std::string>() << "\n";
    if (r.payload.contains("witness")) out << "  witness: " << compact(r.payload["witness"]) << "\n";
    if (r.payload.contains("reason")) out << "  reason: " << r.payload["reason"].get<std::string>() << "\n";
  }
  if (!d.reports.empty()) out << "\nnote: " << kHonestyNote << "\n";
  return out.str();
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace freecat
