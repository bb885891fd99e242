// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_FEATURES_CREDLISTS_HPP
#define HONEYCLUST_FEATURES_CREDLISTS_HPP

#include <vector>

#include "honeyclust/alg/jaccard.hpp"
#include "honeyclust/alg/optics.hpp"
#include "honeyclust/alg/partition.hpp"
#include "honeyclust/features/params.hpp"
#include "honeyclust/profile/profile.hpp"

namespace honeyclust::features {

/// Credential-list clustering: OPTICS over pairwise Jaccard distances of the
/// attempted credential sets. The big common-credential cluster (if any) is
/// kept; the consensus step does the error correction.
inline alg::Partition cluster_credlists(const profile::ProfileMap& profiles,
                                        const OpticsParams& params = {}) {
  std::vector<IpAddr> ips;
  std::vector<std::vector<profile::Credential>> sets;
  for (const auto& [ip, p] : profiles) {
    if (p.credential_set.empty()) continue;
    ips.push_back(ip);
    sets.emplace_back(p.credential_set.begin(), p.credential_set.end());
  }
  const std::size_t n = ips.size();
  if (n == 0) return alg::Partition({}, {}, "credlists");

  alg::DistanceMatrix dm(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      dm.set(a, b, alg::jaccard_distance_sorted(sets[a], sets[b]));

  const auto labels = alg::optics(dm, params.min_samples, params.xi);
  return alg::Partition(std::move(ips), labels, "credlists");
}

}  // namespace honeyclust::features

#endif  // HONEYCLUST_FEATURES_CREDLISTS_HPP
