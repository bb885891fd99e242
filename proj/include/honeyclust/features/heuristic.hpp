// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_FEATURES_HEURISTIC_HPP
#define HONEYCLUST_FEATURES_HEURISTIC_HPP

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "honeyclust/alg/components.hpp"
#include "honeyclust/alg/partition.hpp"
#include "honeyclust/profile/ports.hpp"
#include "honeyclust/profile/profile.hpp"

namespace honeyclust::features {

struct HeuristicConfig {
  std::size_t min_credentials = 5;
  std::size_t min_commands = 5;
};

/// High-confidence exact-match grouping. Two IPs connect when any holds:
///  1. identical credential sets, both of size >= min_credentials;
///  2. an identical normalized command sequence of length >= min_commands
///     in some session of each;
///  3. an identical (host, port) outbound request to an unusual port.
/// The partition is the connected components over IPs with at least one edge;
/// isolated IPs stay outside this partition's universe.
inline alg::Partition cluster_heuristic(const profile::ProfileMap& profiles,
                                        const HeuristicConfig& cfg = {}) {
  std::vector<IpAddr> ips;
  ips.reserve(profiles.size());
  for (const auto& [ip, p] : profiles) ips.push_back(ip);

  std::map<IpAddr, std::size_t> index;
  for (std::size_t i = 0; i < ips.size(); ++i) index[ips[i]] = i;

  // exact-match groups per criterion
  std::map<std::set<profile::Credential>, std::vector<std::size_t>> by_credset;
  std::map<std::vector<std::string>, std::set<std::size_t>> by_sequence;
  std::map<std::pair<std::string, int>, std::set<std::size_t>> by_unusual_target;

  for (const auto& [ip, p] : profiles) {
    const std::size_t i = index[ip];
    if (p.credential_set.size() >= cfg.min_credentials) by_credset[p.credential_set].push_back(i);
    for (const auto& [sid, seq] : p.command_sequences) {
      if (seq.size() >= cfg.min_commands) by_sequence[seq].insert(i);
    }
    for (const auto& target : p.outbound_domains) {
      if (profile::classify_port(target.second) == profile::PortClass::unusual)
        by_unusual_target[target].insert(i);
    }
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto link_group = [&edges](const auto& members) {
    auto it = members.begin();
    if (it == members.end()) return;
    const std::size_t first = *it;
    for (++it; it != members.end(); ++it) edges.emplace_back(first, *it);
  };
  for (const auto& [k, v] : by_credset)
    if (v.size() >= 2) link_group(v);
  for (const auto& [k, v] : by_sequence)
    if (v.size() >= 2) link_group(v);
  for (const auto& [k, v] : by_unusual_target)
    if (v.size() >= 2) link_group(v);

  std::vector<bool> connected(ips.size(), false);
  for (const auto& [a, b] : edges) connected[a] = connected[b] = true;

  const auto labels = alg::connected_components(ips.size(), edges);
  std::vector<IpAddr> universe;
  std::vector<int> ulabels;
  for (std::size_t i = 0; i < ips.size(); ++i) {
    if (!connected[i]) continue;
    universe.push_back(ips[i]);
    ulabels.push_back(labels[i]);
  }
  return alg::Partition(std::move(universe), std::move(ulabels), "heuristic");
}

}  // namespace honeyclust::features

#endif  // HONEYCLUST_FEATURES_HEURISTIC_HPP
