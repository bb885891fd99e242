// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_INGEST_EVENT_HPP
#define HONEYCLUST_INGEST_EVENT_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "honeyclust/core/errors.hpp"
#include "honeyclust/core/ip.hpp"
#include "honeyclust/core/time.hpp"

namespace honeyclust::ingest {

/// One Cowrie JSON-lines event. Only the four envelope fields are typed;
/// everything else rides along in `payload` as strings.
struct RawEvent {
  std::string event_id;
  std::string session;
  IpAddr src_ip;
  Instant timestamp = 0;
  std::map<std::string, std::string> payload;
};

enum class Strictness { strict, lenient };

struct ParseReport {
  std::size_t lines_total = 0;
  std::size_t lines_skipped = 0;
  std::map<std::string, std::size_t> events_by_type;
  std::size_t unknown_events = 0;
  // filled by session assembly
  std::vector<std::string> conflicting_sessions;
  std::size_t keystroke_fallback_sessions = 0;
  std::size_t dropped_commands = 0;
  std::size_t dropped_logins = 0;
  std::size_t dropped_outbound = 0;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["lines_total"] = lines_total;
    j["lines_skipped"] = lines_skipped;
    j["events_by_type"] = events_by_type;
    j["unknown_events"] = unknown_events;
    j["conflicting_sessions"] = conflicting_sessions;
    j["keystroke_fallback_sessions"] = keystroke_fallback_sessions;
    j["dropped_commands"] = dropped_commands;
    j["dropped_logins"] = dropped_logins;
    j["dropped_outbound"] = dropped_outbound;
    return j;
  }
};

struct ParseResult {
  std::vector<RawEvent> events;
  ParseReport report;
};

/// Event ids the pipeline consumes. Anything else is retained as a RawEvent
/// (and counted) but ignored downstream.
inline const std::set<std::string>& recognized_event_ids() {
  static const std::set<std::string> ids = {
      "cowrie.session.connect", "cowrie.session.closed",  "cowrie.login.success",
      "cowrie.login.failed",    "cowrie.command.input",   "cowrie.direct-tcpip.request",
      "cowrie.client.kex",      "cowrie.log.open",        "cowrie.ttylog",
  };
  return ids;
}

namespace detail {

inline std::string json_value_to_string(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline RawEvent event_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("event is not a JSON object");
  RawEvent ev;
  const auto eid = j.find("eventid");
  if (eid == j.end() || !eid->is_string() || eid->get<std::string>().empty())
    throw DataError("missing or empty eventid");
  ev.event_id = eid->get<std::string>();

  const auto sess = j.find("session");
  if (sess == j.end() || !sess->is_string() || sess->get<std::string>().empty())
    throw DataError("missing session token");
  ev.session = sess->get<std::string>();

  const auto ipf = j.find("src_ip");
  if (ipf == j.end() || !ipf->is_string()) throw DataError("missing src_ip");
  const auto ip = IpAddr::parse(ipf->get<std::string>());
  if (!ip) throw DataError("src_ip does not parse: " + ipf->get<std::string>());
  ev.src_ip = *ip;

  const auto ts = j.find("timestamp");
  if (ts == j.end() || !ts->is_string()) throw DataError("missing timestamp");
  ev.timestamp = parse_rfc3339_or_throw(ts->get<std::string>());

  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key() == "eventid" || it.key() == "session" || it.key() == "src_ip" ||
        it.key() == "timestamp")
      continue;
    ev.payload[it.key()] = json_value_to_string(it.value());
  }
  return ev;
}

inline bool blank(const std::string& s) {
  for (char c : s)
    if (c != ' ' && c != '\t' && c != '\r') return false;
  return true;
}

}  // namespace detail

/// Parses JSON-lines into events. Strict mode throws MalformedLine at the
/// first bad line; lenient mode skips and counts. Blank lines are ignored
/// outright in both modes.
inline ParseResult parse_log_stream(const std::vector<std::string>& lines,
                                    Strictness strictness) {
  ParseResult out;
  std::size_t line_no = 0;
  for (const auto& line : lines) {
    ++line_no;
    if (detail::blank(line)) continue;
    ++out.report.lines_total;
    try {
      const auto j = nlohmann::json::parse(line);
      auto ev = detail::event_from_json(j);
      ++out.report.events_by_type[ev.event_id];
      if (!recognized_event_ids().count(ev.event_id)) ++out.report.unknown_events;
      out.events.push_back(std::move(ev));
    } catch (const std::exception& e) {
      if (strictness == Strictness::strict) throw MalformedLine(line_no, e.what());
      ++out.report.lines_skipped;
    }
  }
  return out;
}

}  // namespace honeyclust::ingest

#endif  // HONEYCLUST_INGEST_EVENT_HPP
