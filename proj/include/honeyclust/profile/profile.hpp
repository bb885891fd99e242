// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_PROFILE_PROFILE_HPP
#define HONEYCLUST_PROFILE_PROFILE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "honeyclust/core/ip.hpp"
#include "honeyclust/core/time.hpp"
#include "honeyclust/ingest/session.hpp"
#include "honeyclust/profile/capability.hpp"
#include "honeyclust/profile/commands.hpp"
#include "honeyclust/profile/common_credentials.hpp"

namespace honeyclust::profile {

/// Everything the feature clusterers need about one attacking IP.
struct IpProfile {
  IpAddr ip;
  std::set<std::string> regions;
  std::vector<std::string> sessions;  // session ids, sorted
  std::set<Credential> credential_set;  // password-method attempts only
  std::vector<std::pair<std::string, std::vector<std::string>>> command_sequences;
  std::vector<std::pair<std::string, std::vector<std::uint64_t>>> capability_sequences;
  std::set<std::pair<std::string, int>> outbound_domains;  // (dst_host, dst_port)
  std::vector<Instant> probe_timestamps;  // one per session (start time), sorted
  bool first_attempt_success = false;
  std::set<std::tuple<std::string, std::string, Instant>> successful_credentials;
  std::map<std::string, std::size_t> hassh_values;  // hassh -> session count
};

using ProfileMap = std::map<IpAddr, IpProfile>;

/// Aggregates sessions into per-IP profiles. Deterministic: sessions arrive
/// in id order, per-IP sequences are re-sorted by time afterwards.
inline ProfileMap build_profiles(const std::map<std::string, ingest::SessionRecord>& sessions,
                                 const CapabilityMap& cap_map = default_capability_map()) {
  ProfileMap profiles;
  // (timestamp, session_id, success) per login attempt, for the first-attempt flag
  std::map<IpAddr, std::vector<std::tuple<Instant, std::string, bool>>> attempts;

  for (const auto& [sid, s] : sessions) {
    auto& p = profiles[s.src_ip];
    p.ip = s.src_ip;
    if (!s.region.empty()) p.regions.insert(s.region);
    p.sessions.push_back(sid);
    p.probe_timestamps.push_back(s.start);

    for (const auto& l : s.logins) {
      if (l.method != ingest::AuthMethod::password) continue;
      p.credential_set.insert({l.username, l.password});
      attempts[s.src_ip].emplace_back(l.timestamp, sid, l.success);
      if (l.success) {
        // keep the earliest success per credential
        bool found = false;
        for (const auto& [u, pw, ts] : p.successful_credentials) {
          if (u == l.username && pw == l.password) {
            found = true;
            if (l.timestamp < ts) {
              p.successful_credentials.erase({u, pw, ts});
              p.successful_credentials.insert({l.username, l.password, l.timestamp});
            }
            break;
          }
        }
        if (!found)
          p.successful_credentials.insert({l.username, l.password, l.timestamp});
      }
    }

    if (!s.commands.empty()) {
      auto binaries = normalize_commands(s.commands);
      if (!binaries.empty()) {
        p.capability_sequences.emplace_back(sid, embed_session(binaries, cap_map));
        p.command_sequences.emplace_back(sid, std::move(binaries));
      }
    }
    for (const auto& o : s.outbound) p.outbound_domains.insert({o.dst_host, o.dst_port});
    if (s.hassh) ++p.hassh_values[*s.hassh];
  }

  for (auto& [ip, p] : profiles) {
    std::sort(p.probe_timestamps.begin(), p.probe_timestamps.end());
    auto it = attempts.find(ip);
    if (it != attempts.end() && !it->second.empty()) {
      std::sort(it->second.begin(), it->second.end());
      p.first_attempt_success = std::get<2>(it->second.front());
    }
  }
  return profiles;
}

struct HasshStat {
  std::string hassh;
  std::size_t session_count = 0;
  std::size_t ip_count = 0;
};

/// Diagnostic aggregation only; hassh is deliberately not a clustering
/// feature. Sorted by session count descending, then hassh.
inline std::vector<HasshStat> hassh_stats(const ProfileMap& profiles) {
  std::map<std::string, HasshStat> acc;
  for (const auto& [ip, p] : profiles) {
    for (const auto& [h, n] : p.hassh_values) {
      auto& st = acc[h];
      st.hassh = h;
      st.session_count += n;
      st.ip_count += 1;
    }
  }
  std::vector<HasshStat> out;
  out.reserve(acc.size());
  for (auto& [h, st] : acc) out.push_back(st);
  std::sort(out.begin(), out.end(), [](const HasshStat& a, const HasshStat& b) {
    if (a.session_count != b.session_count) return a.session_count > b.session_count;
    return a.hassh < b.hassh;
  });
  return out;
}

inline nlohmann::json profile_to_json(const IpProfile& p) {
  nlohmann::json j;
  j["ip"] = p.ip.to_string();
  j["regions"] = p.regions;
  j["sessions"] = p.sessions;
  auto& creds = j["credential_set"] = nlohmann::json::array();
  for (const auto& [u, pw] : p.credential_set) creds.push_back({u, pw});
  auto& seqs = j["command_sequences"] = nlohmann::json::array();
  for (const auto& [sid, seq] : p.command_sequences) seqs.push_back({{"session", sid}, {"binaries", seq}});
  auto& caps = j["capability_sequences"] = nlohmann::json::array();
  for (const auto& [sid, seq] : p.capability_sequences) caps.push_back({{"session", sid}, {"vectors", seq}});
  auto& dom = j["outbound_domains"] = nlohmann::json::array();
  for (const auto& [h, port] : p.outbound_domains) dom.push_back({h, port});
  auto& ts = j["probe_timestamps"] = nlohmann::json::array();
  for (auto t : p.probe_timestamps) ts.push_back(format_rfc3339(t));
  j["first_attempt_success"] = p.first_attempt_success;
  auto& sc = j["successful_credentials"] = nlohmann::json::array();
  for (const auto& [u, pw, t] : p.successful_credentials)
    sc.push_back({u, pw, format_rfc3339(t)});
  j["hassh_values"] = p.hassh_values;
  return j;
}

inline IpProfile profile_from_json(const nlohmann::json& j) {
  IpProfile p;
  const auto ip = IpAddr::parse(j.at("ip").get<std::string>());
  if (!ip) throw DataError("profile store: bad ip");
  p.ip = *ip;
  p.regions = j.at("regions").get<std::set<std::string>>();
  p.sessions = j.at("sessions").get<std::vector<std::string>>();
  for (const auto& c : j.at("credential_set"))
    p.credential_set.insert({c.at(0).get<std::string>(), c.at(1).get<std::string>()});
  for (const auto& s : j.at("command_sequences"))
    p.command_sequences.emplace_back(s.at("session").get<std::string>(),
                                     s.at("binaries").get<std::vector<std::string>>());
  for (const auto& s : j.at("capability_sequences"))
    p.capability_sequences.emplace_back(s.at("session").get<std::string>(),
                                        s.at("vectors").get<std::vector<std::uint64_t>>());
  for (const auto& d : j.at("outbound_domains"))
    p.outbound_domains.insert({d.at(0).get<std::string>(), d.at(1).get<int>()});
  for (const auto& t : j.at("probe_timestamps"))
    p.probe_timestamps.push_back(parse_rfc3339_or_throw(t.get<std::string>()));
  p.first_attempt_success = j.at("first_attempt_success").get<bool>();
  for (const auto& s : j.at("successful_credentials"))
    p.successful_credentials.insert({s.at(0).get<std::string>(), s.at(1).get<std::string>(),
                                     parse_rfc3339_or_throw(s.at(2).get<std::string>())});
  p.hassh_values = j.at("hassh_values").get<std::map<std::string, std::size_t>>();
  return p;
}

inline nlohmann::json profiles_to_json(const ProfileMap& profiles, const std::string& region) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["region"] = region;
  auto& arr = j["profiles"] = nlohmann::json::array();
  for (const auto& [ip, p] : profiles) arr.push_back(profile_to_json(p));
  return j;
}

inline ProfileMap profiles_from_json(const nlohmann::json& j) {
  if (j.value("schema_version", 0) != 1) throw DataError("profile store: unsupported schema_version");
  ProfileMap out;
  for (const auto& pj : j.at("profiles")) {
    auto p = profile_from_json(pj);
    out.emplace(p.ip, std::move(p));
  }
  return out;
}

}  // namespace honeyclust::profile

#endif  // HONEYCLUST_PROFILE_PROFILE_HPP
