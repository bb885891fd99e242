// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_FEATURES_OUTBOUND_HPP
#define HONEYCLUST_FEATURES_OUTBOUND_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "honeyclust/alg/components.hpp"
#include "honeyclust/alg/partition.hpp"
#include "honeyclust/alg/spectral.hpp"
#include "honeyclust/profile/profile.hpp"

namespace honeyclust::features {

/// Groups IPs by shared outbound destinations: an (unweighted) edge when two
/// IPs requested at least one host in common, ports ignored. Spectral
/// clustering with eigengap selection runs per connected component of size
/// >= 3; smaller components become clusters as-is.
inline alg::Partition cluster_outbound(const profile::ProfileMap& profiles, int k_min,
                                       int k_max, std::uint64_t seed) {
  std::vector<IpAddr> ips;
  std::vector<const profile::IpProfile*> parts;
  for (const auto& [ip, p] : profiles) {
    if (!p.outbound_domains.empty()) {
      ips.push_back(ip);
      parts.push_back(&p);
    }
  }
  const std::size_t n = ips.size();
  if (n == 0) return alg::Partition({}, {}, "outbound");

  std::map<std::string, std::vector<std::size_t>> by_host;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::string> hosts;
    for (const auto& [host, port] : parts[i]->outbound_domains) hosts.insert(host);
    for (const auto& h : hosts) by_host[h].push_back(i);
  }

  alg::Adjacency adj(n);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [host, members] : by_host) {
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        adj.add_edge(members[a], members[b]);
        edges.emplace_back(members[a], members[b]);
      }
  }

  const auto comp = alg::connected_components(n, edges);
  const int n_comp = n ? 1 + *std::max_element(comp.begin(), comp.end()) : 0;
  std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(n_comp));
  for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(comp[i])].push_back(i);

  std::vector<int> labels(n, 0);
  int next_label = 0;
  for (std::size_t c = 0; c < members.size(); ++c) {
    const auto& m = members[c];
    if (m.size() <= 2) {
      for (auto i : m) labels[i] = next_label;
      ++next_label;
      continue;
    }
    alg::Adjacency sub(m.size());
    for (std::size_t x = 0; x < m.size(); ++x)
      for (std::size_t y = x + 1; y < m.size(); ++y)
        if (adj.at(m[x], m[y])) sub.add_edge(x, y);
    const int sub_kmax = std::min<int>(k_max, static_cast<int>(m.size()) - 1);
    const auto res = alg::spectral_cluster(sub, k_min, std::max(k_min, sub_kmax),
                                           seed + static_cast<std::uint64_t>(c));
    int local_max = 0;
    for (std::size_t x = 0; x < m.size(); ++x) {
      labels[m[x]] = next_label + res.labels[x];
      local_max = std::max(local_max, res.labels[x]);
    }
    next_label += local_max + 1;
  }
  return alg::Partition(std::move(ips), std::move(labels), "outbound");
}

}  // namespace honeyclust::features

#endif  // HONEYCLUST_FEATURES_OUTBOUND_HPP
