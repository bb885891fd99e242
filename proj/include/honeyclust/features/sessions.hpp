// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_FEATURES_SESSIONS_HPP
#define HONEYCLUST_FEATURES_SESSIONS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "honeyclust/alg/optics.hpp"
#include "honeyclust/alg/partition.hpp"
#include "honeyclust/core/parallel.hpp"
#include "honeyclust/features/params.hpp"
#include "honeyclust/profile/profile.hpp"

namespace honeyclust::features {

/// Distance between two capability sequences: the shorter is padded with zero
/// vectors, then the normalized Hamming distance is averaged over positions.
inline double capability_sequence_distance(const std::vector<std::uint64_t>& a,
                                           const std::vector<std::uint64_t>& b,
                                           std::size_t vocab_size) {
  const std::size_t len = std::max(a.size(), b.size());
  if (len == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t x = i < a.size() ? a[i] : 0;
    const std::uint64_t y = i < b.size() ? b[i] : 0;
    sum += static_cast<double>(std::popcount(x ^ y)) / static_cast<double>(vocab_size);
  }
  return sum / static_cast<double>(len);
}

/// Capability-embedding clustering: sessions with executed binaries are
/// clustered by OPTICS over the sequence distance, then session clusters map
/// back to IPs by majority vote (lowest label on ties). IPs whose sessions
/// all land in noise are NOISE.
inline alg::Partition cluster_sessions(const profile::ProfileMap& profiles,
                                       const profile::CapabilityMap& cap_map =
                                           profile::default_capability_map(),
                                       const OpticsParams& params = {},
                                       unsigned workers = 0) {
  struct Entry {
    std::string session_id;
    std::size_t ip_index;
    const std::vector<std::uint64_t>* seq;
  };
  std::vector<IpAddr> ips;
  std::vector<Entry> entries;
  for (const auto& [ip, p] : profiles) {
    if (p.capability_sequences.empty()) continue;
    const std::size_t idx = ips.size();
    ips.push_back(ip);
    for (const auto& [sid, seq] : p.capability_sequences)
      entries.push_back({sid, idx, &seq});
  }
  if (ips.empty()) return alg::Partition({}, {}, "sessions");
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.session_id < b.session_id; });

  const std::size_t m = entries.size();
  alg::DistanceMatrix dm(m);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
  std::vector<double> dist(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    dist[k] = capability_sequence_distance(*entries[pairs[k].first].seq,
                                           *entries[pairs[k].second].seq,
                                           cap_map.vocabulary_size());
  });
  for (std::size_t k = 0; k < pairs.size(); ++k)
    dm.set(pairs[k].first, pairs[k].second, dist[k]);

  const auto session_labels = alg::optics(dm, params.min_samples, params.xi);

  // majority vote per IP
  std::vector<std::map<int, std::size_t>> votes(ips.size());
  for (std::size_t e = 0; e < m; ++e) {
    if (session_labels[e] >= 0) ++votes[entries[e].ip_index][session_labels[e]];
  }
  std::vector<int> ip_labels(ips.size(), alg::kNoise);
  for (std::size_t i = 0; i < ips.size(); ++i) {
    std::size_t best = 0;
    for (const auto& [label, count] : votes[i]) {  // ascending label: ties keep lowest
      if (count > best) {
        best = count;
        ip_labels[i] = label;
      }
    }
  }
  return alg::Partition(std::move(ips), std::move(ip_labels), "sessions");
}

}  // namespace honeyclust::features

#endif  // HONEYCLUST_FEATURES_SESSIONS_HPP
