// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_INGEST_SESSION_HPP
#define HONEYCLUST_INGEST_SESSION_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "honeyclust/core/ip.hpp"
#include "honeyclust/core/time.hpp"
#include "honeyclust/ingest/event.hpp"

namespace honeyclust::ingest {

enum class AuthMethod { password, publickey };

struct LoginAttempt {
  std::string username;
  std::string password;
  bool success = false;
  Instant timestamp = 0;
  AuthMethod method = AuthMethod::password;

  friend bool operator==(const LoginAttempt&, const LoginAttempt&) = default;
};

struct OutboundRequest {
  std::string dst_host;
  int dst_port = 0;
  Instant timestamp = 0;

  friend bool operator==(const OutboundRequest&, const OutboundRequest&) = default;
};

struct CommandEvent {
  std::string raw;
  Instant timestamp = 0;

  friend bool operator==(const CommandEvent&, const CommandEvent&) = default;
};

enum class KeyClass { printable, erase, control };

struct Keystroke {
  Instant timestamp = 0;
  KeyClass cls = KeyClass::printable;

  friend bool operator==(const Keystroke&, const Keystroke&) = default;
};

/// One attacker connection. Invariants: start <= end and every contained
/// timestamp lies in [start, end]; logins are time-ordered with at most one
/// success; commands exist only after a successful login.
struct SessionRecord {
  std::string session_id;
  IpAddr src_ip;
  std::string region;
  Instant start = 0;
  Instant end = 0;
  std::vector<LoginAttempt> logins;
  std::vector<CommandEvent> commands;
  std::vector<OutboundRequest> outbound;
  std::vector<Keystroke> keystrokes;
  std::optional<std::string> hassh;
  bool keystrokes_from_tty = false;  // false: reconstructed at command granularity
  std::size_t source_events = 0;     // recognized events folded into this record

  std::optional<Instant> first_success_time() const {
    for (const auto& l : logins)
      if (l.success) return l.timestamp;
    return std::nullopt;
  }

  // source_events is bookkeeping, not content; round-trips may differ in it.
  friend bool operator==(const SessionRecord& a, const SessionRecord& b) {
    return a.session_id == b.session_id && a.src_ip == b.src_ip && a.region == b.region &&
           a.start == b.start && a.end == b.end && a.logins == b.logins &&
           a.commands == b.commands && a.outbound == b.outbound &&
           a.keystrokes == b.keystrokes && a.hassh == b.hassh &&
           a.keystrokes_from_tty == b.keystrokes_from_tty;
  }
};

namespace detail {

inline bool is_hassh(const std::string& s) {
  if (s.size() != 32) return false;
  for (char c : s)
    if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::string payload_sort_key(const RawEvent& e) {
  std::string k;
  for (const auto& [key, value] : e.payload) {
    k += key;
    k += '=';
    k += value;
    k += '\x1f';
  }
  return k;
}

inline std::string lookup(const RawEvent& e, const char* key) {
  const auto it = e.payload.find(key);
  return it == e.payload.end() ? std::string() : it->second;
}

/// Reconstructed keystrokes for sessions without TTY timing: one printable
/// key per command timestamp, plus an erase key when the text itself carries
/// a backspace/delete character.
inline std::vector<Keystroke> keystrokes_from_commands(const std::vector<CommandEvent>& cmds) {
  std::vector<Keystroke> keys;
  for (const auto& c : cmds) {
    keys.push_back({c.timestamp, KeyClass::printable});
    if (c.raw.find('\x08') != std::string::npos || c.raw.find('\x7f') != std::string::npos)
      keys.push_back({c.timestamp, KeyClass::erase});
  }
  return keys;
}

}  // namespace detail

/// Groups events by session token (split per source IP when a token is
/// reused across IPs, flagged in the report) and folds them into validated
/// SessionRecords. Order-insensitive: events are totally ordered by
/// (timestamp, event_id, payload) before folding.
inline std::map<std::string, SessionRecord> assemble_sessions(
    const std::vector<RawEvent>& events, ParseReport& report,
    const std::string& default_region = "") {
  // bucket by token, then by IP within the token
  std::map<std::string, std::map<IpAddr, std::vector<const RawEvent*>>> buckets;
  for (const auto& e : events) {
    if (!recognized_event_ids().count(e.event_id)) continue;
    buckets[e.session][e.src_ip].push_back(&e);
  }

  std::map<std::string, SessionRecord> sessions;
  for (auto& [token, by_ip] : buckets) {
    const bool conflict = by_ip.size() > 1;
    if (conflict) report.conflicting_sessions.push_back(token);
    for (auto& [ip, evs] : by_ip) {
      std::sort(evs.begin(), evs.end(), [](const RawEvent* a, const RawEvent* b) {
        if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
        if (a->event_id != b->event_id) return a->event_id < b->event_id;
        return detail::payload_sort_key(*a) < detail::payload_sort_key(*b);
      });

      SessionRecord rec;
      rec.session_id = conflict ? token + "#" + ip.to_string() : token;
      rec.src_ip = ip;
      rec.region = default_region;
      rec.source_events = evs.size();

      std::optional<Instant> connect_ts, closed_ts;
      bool seen_success = false;
      Instant success_ts = 0;

      for (const RawEvent* e : evs) {
        const std::string sensor = detail::lookup(*e, "sensor");
        if (!sensor.empty() && rec.region == default_region) rec.region = sensor;

        if (e->event_id == "cowrie.session.connect") {
          if (!connect_ts) connect_ts = e->timestamp;
        } else if (e->event_id == "cowrie.session.closed") {
          closed_ts = e->timestamp;
        } else if (e->event_id == "cowrie.login.success" ||
                   e->event_id == "cowrie.login.failed") {
          LoginAttempt l;
          l.username = detail::lookup(*e, "username");
          l.password = detail::lookup(*e, "password");
          l.success = e->event_id == "cowrie.login.success";
          l.timestamp = e->timestamp;
          l.method = detail::lookup(*e, "method") == "publickey" ? AuthMethod::publickey
                                                                 : AuthMethod::password;
          if (l.success) {
            if (seen_success) {
              ++report.dropped_logins;  // at most one success per session
              continue;
            }
            seen_success = true;
            success_ts = l.timestamp;
          }
          rec.logins.push_back(std::move(l));
        } else if (e->event_id == "cowrie.command.input") {
          if (!seen_success || e->timestamp < success_ts) {
            ++report.dropped_commands;  // commands require a preceding success
            continue;
          }
          rec.commands.push_back({detail::lookup(*e, "input"), e->timestamp});
        } else if (e->event_id == "cowrie.direct-tcpip.request") {
          std::string host = detail::lookup(*e, "dst_ip");
          if (host.empty()) host = detail::lookup(*e, "dst_host");
          int port = 0;
          try {
            port = std::stoi(detail::lookup(*e, "dst_port"));
          } catch (...) {
            port = 0;
          }
          if (host.empty() || port < 1 || port > 65535) {
            ++report.dropped_outbound;
            continue;
          }
          rec.outbound.push_back({std::move(host), port, e->timestamp});
        } else if (e->event_id == "cowrie.client.kex") {
          std::string h = detail::lookup(*e, "hassh");
          std::transform(h.begin(), h.end(), h.begin(),
                         [](unsigned char c) { return std::tolower(c); });
          if (detail::is_hassh(h)) rec.hassh = h;
        } else if (e->event_id == "cowrie.ttylog") {
          const std::string cls = detail::lookup(*e, "class");
          KeyClass kc = KeyClass::printable;
          if (cls == "erase") kc = KeyClass::erase;
          else if (cls == "control") kc = KeyClass::control;
          rec.keystrokes.push_back({e->timestamp, kc});
          rec.keystrokes_from_tty = true;
        }
        // cowrie.log.open is a recognized marker with nothing to extract.
      }

      Instant lo = evs.front()->timestamp, hi = evs.back()->timestamp;
      if (connect_ts) lo = std::min(lo, *connect_ts);
      if (closed_ts) hi = std::max(hi, *closed_ts);
      rec.start = lo;
      rec.end = hi;

      if (rec.keystrokes.empty() && !rec.commands.empty()) {
        rec.keystrokes = detail::keystrokes_from_commands(rec.commands);
        ++report.keystroke_fallback_sessions;
      }

      sessions.emplace(rec.session_id, std::move(rec));
    }
  }
  return sessions;
}

}  // namespace honeyclust::ingest

#endif  // HONEYCLUST_INGEST_SESSION_HPP
