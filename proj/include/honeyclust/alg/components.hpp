// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_COMPONENTS_HPP
#define HONEYCLUST_ALG_COMPONENTS_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace honeyclust::alg {

/// Union-find connected components over nodes 0..n-1. Returns one label per
/// node; labels are 0..k-1 ordered by each component's smallest member.
/// Isolated nodes become singleton components.
inline std::vector<int> connected_components(
    std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [a, b] : edges) {
    std::size_t ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<int> labels(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = find(i);
    if (labels[r] < 0) labels[r] = next++;
    labels[i] = labels[r];
  }
  return labels;
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_COMPONENTS_HPP
