// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_MODULARITY_HPP
#define HONEYCLUST_ALG_MODULARITY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "honeyclust/core/errors.hpp"

namespace honeyclust::alg {

struct CommunityResult {
  std::vector<int> labels;  // contiguous 0..k-1 per node
  double modularity_q = 0.0;
};

/// Newman modularity of a labeling, recomputed from scratch:
/// Q = sum_c [ e_c/m - (d_c/2m)^2 ]. An edgeless graph has Q = 0 by convention.
inline double modularity_q(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                           const std::vector<int>& labels) {
  std::set<std::pair<std::size_t, std::size_t>> uniq;
  for (auto [a, b] : edges) {
    if (a == b) continue;
    uniq.insert({std::min(a, b), std::max(a, b)});
  }
  const double m = static_cast<double>(uniq.size());
  if (m == 0) return 0.0;
  std::map<int, double> intra, deg;
  for (const auto& [a, b] : uniq) {
    deg[labels[a]] += 1.0;
    deg[labels[b]] += 1.0;
    if (labels[a] == labels[b]) intra[labels[a]] += 1.0;
  }
  double q = 0.0;
  for (const auto& [c, d] : deg) {
    const double e_c = intra.count(c) ? intra[c] : 0.0;
    const double frac = d / (2.0 * m);
    q += e_c / m - frac * frac;
  }
  (void)n;
  return q;
}

/// Clauset-Newman-Moore greedy agglomeration: every node starts alone;
/// repeatedly merge the community pair with the largest positive modularity
/// gain (lowest label pair on ties) until no merge improves Q.
inline CommunityResult greedy_modularity(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  CommunityResult out;
  if (n == 0) return out;
  out.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.labels[i] = static_cast<int>(i);

  std::set<std::pair<std::size_t, std::size_t>> uniq;
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) throw InvariantError("greedy_modularity: edge endpoint out of range");
    if (a == b) continue;
    uniq.insert({std::min(a, b), std::max(a, b)});
  }
  const double m = static_cast<double>(uniq.size());
  if (uniq.empty()) {
    out.modularity_q = 0.0;
    return out;
  }

  // Community state: between[a][b] = shared edges (a < b), degree per community.
  std::map<std::pair<int, int>, double> between;
  std::map<int, double> degree;
  for (const auto& [a, b] : uniq) {
    const int ca = static_cast<int>(a), cb = static_cast<int>(b);
    between[{std::min(ca, cb), std::max(ca, cb)}] += 1.0;
    degree[ca] += 1.0;
    degree[cb] += 1.0;
  }

  for (;;) {
    double best_gain = 0.0;
    std::pair<int, int> best_pair{-1, -1};
    for (const auto& [pair, e_ab] : between) {
      const double gain = e_ab / m - degree[pair.first] * degree[pair.second] / (2.0 * m * m);
      if (gain > best_gain + 1e-15 ||
          (gain > 0 && std::abs(gain - best_gain) <= 1e-15 && best_pair.first >= 0 &&
           pair < best_pair)) {
        best_gain = gain;
        best_pair = pair;
      }
    }
    if (best_pair.first < 0) break;

    const auto [keep, gone] = best_pair;
    for (auto& l : out.labels)
      if (l == gone) l = keep;
    degree[keep] += degree[gone];
    degree.erase(gone);
    std::map<std::pair<int, int>, double> rebuilt;
    for (const auto& [pair, cnt] : between) {
      int x = pair.first == gone ? keep : pair.first;
      int y = pair.second == gone ? keep : pair.second;
      if (x == y) continue;
      rebuilt[{std::min(x, y), std::max(x, y)}] += cnt;
    }
    between = std::move(rebuilt);
  }

  // Canonical labels and a from-scratch Q for the returned labeling.
  std::map<int, int> remap;
  int next = 0;
  for (auto& l : out.labels) {
    auto [it, inserted] = remap.emplace(l, next);
    if (inserted) ++next;
    l = it->second;
  }
  std::vector<std::pair<std::size_t, std::size_t>> uedges(uniq.begin(), uniq.end());
  out.modularity_q = modularity_q(n, uedges, out.labels);
  return out;
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_MODULARITY_HPP
