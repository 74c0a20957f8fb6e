#include "itocsvm/idmef.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "itocsvm/errors.hpp"
#include "itocsvm/text.hpp"

namespace itocsvm {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view classification_text(Severity s) noexcept {
  switch (s) {
    case Severity::POSSIBLE: return "Possible attack";
    case Severity::MEDIUM: return "Medium attack";
    case Severity::SEVERE: return "Severe attack";
  }
  return "Possible attack";
}

std::string iso8601_utc(std::int64_t epoch_s, double offset_s) {
  using namespace std::chrono;
  const auto total_us = static_cast<std::int64_t>(std::llround(offset_s * 1e6)) + epoch_s * 1'000'000;
  const auto tp = sys_time<microseconds>(microseconds(total_us));
  const auto day = floor<days>(tp);
  const year_month_day ymd(day);
  const hh_mm_ss hms(tp - day);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lld.%06lldZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<long long>(hms.hours().count()), static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()), static_cast<long long>(hms.subseconds().count()));
  return buf;
}

double parse_iso8601_utc(std::string_view s) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  long long us = 0;
  const std::string str(s);
  if (std::sscanf(str.c_str(), "%d-%u-%uT%u:%u:%u.%6lldZ", &y, &mo, &d, &h, &mi, &sec, &us) != 7) {
    throw ParseError("bad ISO-8601 timestamp '" + str + "'");
  }
  using namespace std::chrono;
  const year_month_day ymd{year{y}, month{mo}, day{d}};
  if (!ymd.ok()) throw ParseError("bad calendar date '" + str + "'");
  const auto days_since = sys_days(ymd).time_since_epoch().count();
  const auto whole = static_cast<std::int64_t>(days_since) * 86400 + h * 3600 + mi * 60 + sec;
  return static_cast<double>(whole) + static_cast<double>(us) * 1e-6;
}

std::filesystem::path emit_idmef(const AggregatedAlarm& alarm, const std::string& analyzer_id,
                                 const std::filesystem::path& out_dir, std::uint64_t seq,
                                 std::int64_t capture_epoch_s) {
  if (!alarm.severity) throw UnsetSeverity("cannot emit IDMEF for an unclassified alarm");
  const auto name = "alert_" + analyzer_id + "_" + std::to_string(seq) + ".xml";
  const auto path = out_dir / name;

  std::string x;
  x += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  x += "<IDMEF-Message version=\"1.0\" xmlns=\"http://iana.org/idmef\">\n";
  x += "  <Alert messageid=\"" + xml_escape(analyzer_id) + "-" + std::to_string(seq) + "\">\n";
  x += "    <Analyzer analyzerid=\"" + xml_escape(analyzer_id) + "\" model=\"itocsvm\" class=\"NIDS\"/>\n";
  x += "    <CreateTime>" + iso8601_utc(capture_epoch_s, alarm.last_seen) + "</CreateTime>\n";
  x += "    <Source>\n      <Node>\n";
  x += "        <Address category=\"ipv4-addr\"><address>" + xml_escape(alarm.source.ip) + "</address></Address>\n";
  x += "        <Address category=\"mac\"><address>" + xml_escape(alarm.source.mac) + "</address></Address>\n";
  x += "      </Node>\n    </Source>\n";
  x += "    <Classification text=\"" + std::string(classification_text(*alarm.severity)) + "\"/>\n";
  x += "    <AdditionalData type=\"real\" meaning=\"qa\"><real>" + text::format_double(alarm.qa) + "</real></AdditionalData>\n";
  x += "    <AdditionalData type=\"integer\" meaning=\"qb\"><integer>" + std::to_string(alarm.qb) +
       "</integer></AdditionalData>\n";
  x += "    <AdditionalData type=\"string\" meaning=\"origin\"><string>" + std::string(to_string(alarm.origin)) +
       "</string></AdditionalData>\n";
  x += "  </Alert>\n</IDMEF-Message>\n";

  std::error_code ec;
  if (!std::filesystem::is_directory(out_dir, ec)) throw IoError("IDMEF output directory " + out_dir.string() + " missing");
  text::write_file(path, x);
  return path;
}

IdmefAlert read_idmef(const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(path.string(), tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(std::string("IDMEF parse failure: ") + e.what());
  }
  IdmefAlert out;
  try {
    const auto& alert = tree.get_child("IDMEF-Message.Alert");
    out.analyzer_id = alert.get<std::string>("Analyzer.<xmlattr>.analyzerid");
    out.create_time_s = parse_iso8601_utc(alert.get<std::string>("CreateTime"));
    for (const auto& [tag, node] : alert.get_child("Source.Node")) {
      if (tag != "Address") continue;
      const auto category = node.get<std::string>("<xmlattr>.category");
      if (category == "ipv4-addr") out.source.ip = node.get<std::string>("address");
      if (category == "mac") out.source.mac = node.get<std::string>("address");
    }
    out.classification = alert.get<std::string>("Classification.<xmlattr>.text");
    bool have_qa = false;
    bool have_qb = false;
    for (const auto& [tag, node] : alert) {
      if (tag != "AdditionalData") continue;
      const auto meaning = node.get<std::string>("<xmlattr>.meaning");
      if (meaning == "qa") {
        have_qa = text::parse_double(node.get<std::string>("real"), out.qa);
      } else if (meaning == "qb") {
        have_qb = text::parse_u64(node.get<std::string>("integer"), out.qb);
      }
    }
    if (!have_qa || !have_qb) throw ParseError("IDMEF AdditionalData lacks qa/qb");
  } catch (const pt::ptree_error& e) {
    throw ParseError(std::string("IDMEF field missing: ") + e.what());
  }
  if (out.source.ip.empty() || out.source.mac.empty()) throw ParseError("IDMEF source address missing");
  return out;
}

}  // namespace itocsvm
