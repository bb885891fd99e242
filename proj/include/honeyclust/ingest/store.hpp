// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_INGEST_STORE_HPP
#define HONEYCLUST_INGEST_STORE_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "honeyclust/core/errors.hpp"
#include "honeyclust/ingest/session.hpp"

namespace honeyclust::ingest {

inline const char* auth_method_name(AuthMethod m) {
  return m == AuthMethod::publickey ? "publickey" : "password";
}

inline const char* key_class_name(KeyClass k) {
  switch (k) {
    case KeyClass::erase: return "erase";
    case KeyClass::control: return "control";
    default: return "printable";
  }
}

inline nlohmann::json session_to_json(const SessionRecord& s) {
  nlohmann::json j;
  j["session_id"] = s.session_id;
  j["src_ip"] = s.src_ip.to_string();
  j["region"] = s.region;
  j["start"] = format_rfc3339(s.start);
  j["end"] = format_rfc3339(s.end);
  j["source_events"] = s.source_events;
  j["keystrokes_from_tty"] = s.keystrokes_from_tty;
  if (s.hassh) j["hassh"] = *s.hassh;
  auto& logins = j["logins"] = nlohmann::json::array();
  for (const auto& l : s.logins)
    logins.push_back({{"username", l.username},
                      {"password", l.password},
                      {"success", l.success},
                      {"timestamp", format_rfc3339(l.timestamp)},
                      {"method", auth_method_name(l.method)}});
  auto& cmds = j["commands"] = nlohmann::json::array();
  for (const auto& c : s.commands)
    cmds.push_back({{"raw", c.raw}, {"timestamp", format_rfc3339(c.timestamp)}});
  auto& out = j["outbound"] = nlohmann::json::array();
  for (const auto& o : s.outbound)
    out.push_back({{"dst_host", o.dst_host},
                   {"dst_port", o.dst_port},
                   {"timestamp", format_rfc3339(o.timestamp)}});
  auto& keys = j["keystrokes"] = nlohmann::json::array();
  for (const auto& k : s.keystrokes)
    keys.push_back({{"timestamp", format_rfc3339(k.timestamp)}, {"class", key_class_name(k.cls)}});
  return j;
}

inline SessionRecord session_from_json(const nlohmann::json& j) {
  SessionRecord s;
  s.session_id = j.at("session_id").get<std::string>();
  const auto ip = IpAddr::parse(j.at("src_ip").get<std::string>());
  if (!ip) throw DataError("session store: bad src_ip");
  s.src_ip = *ip;
  s.region = j.at("region").get<std::string>();
  s.start = parse_rfc3339_or_throw(j.at("start").get<std::string>());
  s.end = parse_rfc3339_or_throw(j.at("end").get<std::string>());
  s.source_events = j.value("source_events", std::size_t{0});
  s.keystrokes_from_tty = j.value("keystrokes_from_tty", false);
  if (j.contains("hassh")) s.hassh = j.at("hassh").get<std::string>();
  for (const auto& l : j.at("logins")) {
    LoginAttempt a;
    a.username = l.at("username").get<std::string>();
    a.password = l.at("password").get<std::string>();
    a.success = l.at("success").get<bool>();
    a.timestamp = parse_rfc3339_or_throw(l.at("timestamp").get<std::string>());
    a.method = l.at("method").get<std::string>() == "publickey" ? AuthMethod::publickey
                                                                : AuthMethod::password;
    s.logins.push_back(std::move(a));
  }
  for (const auto& c : j.at("commands"))
    s.commands.push_back(
        {c.at("raw").get<std::string>(), parse_rfc3339_or_throw(c.at("timestamp").get<std::string>())});
  for (const auto& o : j.at("outbound"))
    s.outbound.push_back({o.at("dst_host").get<std::string>(), o.at("dst_port").get<int>(),
                          parse_rfc3339_or_throw(o.at("timestamp").get<std::string>())});
  for (const auto& k : j.at("keystrokes")) {
    const std::string cls = k.at("class").get<std::string>();
    KeyClass kc = KeyClass::printable;
    if (cls == "erase") kc = KeyClass::erase;
    else if (cls == "control") kc = KeyClass::control;
    s.keystrokes.push_back({parse_rfc3339_or_throw(k.at("timestamp").get<std::string>()), kc});
  }
  return s;
}

/// The on-disk session store: {"schema_version": 1, "region": ..., "sessions": [...]}.
inline nlohmann::json store_to_json(const std::map<std::string, SessionRecord>& sessions,
                                    const ParseReport& report, const std::string& region) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["region"] = region;
  j["report"] = report.to_json();
  auto& arr = j["sessions"] = nlohmann::json::array();
  for (const auto& [id, s] : sessions) arr.push_back(session_to_json(s));
  return j;
}

inline std::map<std::string, SessionRecord> store_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != 1)
    throw DataError("session store: unsupported schema_version");
  std::map<std::string, SessionRecord> out;
  for (const auto& s : j.at("sessions")) {
    auto rec = session_from_json(s);
    out.emplace(rec.session_id, std::move(rec));
  }
  return out;
}

/// Renders a SessionRecord back into Cowrie-style event lines. Re-parsing the
/// emitted lines reproduces an equal record (reconstructed keystrokes are not
/// emitted; they regenerate from the command events).
inline std::vector<std::string> emit_event_lines(const SessionRecord& s) {
  std::vector<nlohmann::json> events;
  auto base = [&](const char* eventid, Instant ts) {
    nlohmann::json j;
    j["eventid"] = eventid;
    j["session"] = s.session_id;
    j["src_ip"] = s.src_ip.to_string();
    j["timestamp"] = format_rfc3339(ts);
    if (!s.region.empty()) j["sensor"] = s.region;
    return j;
  };
  events.push_back(base("cowrie.session.connect", s.start));
  if (s.hassh) {
    auto j = base("cowrie.client.kex", s.start);
    j["hassh"] = *s.hassh;
    events.push_back(std::move(j));
  }
  for (const auto& l : s.logins) {
    auto j = base(l.success ? "cowrie.login.success" : "cowrie.login.failed", l.timestamp);
    j["username"] = l.username;
    j["password"] = l.password;
    j["method"] = auth_method_name(l.method);
    events.push_back(std::move(j));
  }
  for (const auto& c : s.commands) {
    auto j = base("cowrie.command.input", c.timestamp);
    j["input"] = c.raw;
    events.push_back(std::move(j));
  }
  for (const auto& o : s.outbound) {
    auto j = base("cowrie.direct-tcpip.request", o.timestamp);
    j["dst_ip"] = o.dst_host;
    j["dst_port"] = o.dst_port;
    events.push_back(std::move(j));
  }
  if (s.keystrokes_from_tty) {
    for (const auto& k : s.keystrokes) {
      auto j = base("cowrie.ttylog", k.timestamp);
      j["class"] = key_class_name(k.cls);
      events.push_back(std::move(j));
    }
  }
  events.push_back(base("cowrie.session.closed", s.end));

  std::vector<std::string> lines;
  lines.reserve(events.size());
  for (const auto& e : events) lines.push_back(e.dump());
  return lines;
}

}  // namespace honeyclust::ingest

#endif  // HONEYCLUST_INGEST_STORE_HPP
