// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_JACCARD_HPP
#define HONEYCLUST_ALG_JACCARD_HPP

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

namespace honeyclust::alg {

/// Jaccard distance 1 - |a∩b| / |a∪b| over sorted unique ranges.
/// Two empty sets are defined to be at distance 0.
template <typename T>
double jaccard_distance_sorted(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.empty() && b.empty()) return 0.0;
  std::size_t inter = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++inter;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - inter;
  return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

template <typename T>
double jaccard_distance(const std::set<T>& a, const std::set<T>& b) {
  std::vector<T> va(a.begin(), a.end()), vb(b.begin(), b.end());
  return jaccard_distance_sorted(va, vb);
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_JACCARD_HPP
