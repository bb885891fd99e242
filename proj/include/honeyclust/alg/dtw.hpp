// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_DTW_HPP
#define HONEYCLUST_ALG_DTW_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "honeyclust/core/errors.hpp"

namespace honeyclust::alg {

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Dynamic time warping distance with |x-y| local cost, match/insert/delete
/// steps and a Sakoe-Chiba band of half-width `band` (kUnbounded for the full
/// matrix). The band must admit the corner: band >= |len(a)-len(b)|.
inline double dtw(std::span<const double> a, std::span<const double> b,
                  std::size_t band = kUnbounded) {
  const std::size_t n = a.size(), m = b.size();
  if (n == 0 || m == 0) throw DataError("dtw: sequences must be non-empty");
  const std::size_t len_diff = n > m ? n - m : m - n;
  if (band != kUnbounded && band < len_diff)
    throw DataError("dtw: band narrower than the length difference");

  constexpr double inf = std::numeric_limits<double>::infinity();
  // Rows are 1-based over a; prev/cur span the 1-based b axis.
  std::vector<double> prev(m + 1, inf), cur(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t jlo = 1, jhi = m;
    if (band != kUnbounded) {
      jlo = i > band ? i - band : 1;
      jhi = std::min(m, i + band);
    }
    std::fill(cur.begin(), cur.end(), inf);
    for (std::size_t j = jlo; j <= jhi; ++j) {
      const double cost = std::abs(a[i - 1] - b[j - 1]);
      const double best = std::min({prev[j - 1], prev[j], cur[j - 1]});
      cur[j] = cost + best;
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

inline double dtw(const std::vector<double>& a, const std::vector<double>& b,
                  std::size_t band = kUnbounded) {
  return dtw(std::span<const double>(a), std::span<const double>(b), band);
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_DTW_HPP
