// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_FEATURES_CREDSHARE_HPP
#define HONEYCLUST_FEATURES_CREDSHARE_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "honeyclust/alg/modularity.hpp"
#include "honeyclust/alg/partition.hpp"
#include "honeyclust/profile/common_credentials.hpp"
#include "honeyclust/profile/profile.hpp"

namespace honeyclust::features {

struct CredShareConfig {
  std::set<profile::Credential> common_credential_filter = profile::common_credentials();
  // Honeypot-side lifetime of an accepted credential. The clusterer itself is
  // TTL-free (any earlier discoverer qualifies); the campaign generator uses
  // this value to shape sharing latency.
  Duration active_ttl = 60 * kMinute;
};

/// Credential-sharing graph: for every IP B whose first-ever login attempt
/// succeeded with a non-common credential c, draw an edge to each IP A whose
/// own first success with c came earlier (the "discoverer"). Communities come
/// from greedy modularity maximization; singleton communities drop to NOISE.
inline alg::Partition cluster_credshare(const profile::ProfileMap& profiles,
                                        const CredShareConfig& cfg = {}) {
  struct FirstSuccess {
    profile::Credential cred;
    Instant when;
  };
  // first success per (credential, ip), and B-candidates
  std::map<profile::Credential, std::vector<std::pair<Instant, IpAddr>>> discoveries;
  std::map<IpAddr, FirstSuccess> first_try;

  for (const auto& [ip, p] : profiles) {
    for (const auto& [u, pw, ts] : p.successful_credentials)
      discoveries[{u, pw}].emplace_back(ts, ip);
    if (!p.first_attempt_success || p.successful_credentials.empty()) continue;
    // the chronologically first success is the first attempt itself
    auto best = *std::min_element(
        p.successful_credentials.begin(), p.successful_credentials.end(),
        [](const auto& a, const auto& b) { return std::get<2>(a) < std::get<2>(b); });
    first_try[ip] = {{std::get<0>(best), std::get<1>(best)}, std::get<2>(best)};
  }

  std::set<std::pair<IpAddr, IpAddr>> edge_set;
  for (const auto& [b_ip, fs] : first_try) {
    if (cfg.common_credential_filter.count(fs.cred)) continue;
    const auto it = discoveries.find(fs.cred);
    if (it == discoveries.end()) continue;
    for (const auto& [ts, a_ip] : it->second) {
      if (a_ip == b_ip || ts >= fs.when) continue;
      edge_set.insert({std::min(a_ip, b_ip), std::max(a_ip, b_ip)});
    }
  }
  if (edge_set.empty()) return alg::Partition({}, {}, "credshare");

  std::vector<IpAddr> universe;
  {
    std::set<IpAddr> nodes;
    for (const auto& [a, b] : edge_set) {
      nodes.insert(a);
      nodes.insert(b);
    }
    universe.assign(nodes.begin(), nodes.end());
  }
  std::map<IpAddr, std::size_t> index;
  for (std::size_t i = 0; i < universe.size(); ++i) index[universe[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(edge_set.size());
  for (const auto& [a, b] : edge_set) edges.emplace_back(index[a], index[b]);

  auto result = alg::greedy_modularity(universe.size(), edges);

  // singleton communities -> NOISE
  std::map<int, std::size_t> sizes;
  for (int l : result.labels) ++sizes[l];
  std::vector<int> labels(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i)
    labels[i] = sizes[result.labels[i]] >= 2 ? result.labels[i] : alg::kNoise;

  return alg::Partition(std::move(universe), std::move(labels), "credshare");
}

}  // namespace honeyclust::features

#endif  // HONEYCLUST_FEATURES_CREDSHARE_HPP
