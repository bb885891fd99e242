// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_KMEANS_HPP
#define HONEYCLUST_ALG_KMEANS_HPP

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "honeyclust/core/errors.hpp"
#include "honeyclust/core/rng.hpp"

namespace honeyclust::alg {

struct KMeansResult {
  std::vector<int> labels;
  double inertia = 0.0;
};

namespace kmeans_detail {

inline double sqdist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline KMeansResult lloyd_once(const std::vector<std::vector<double>>& pts, std::size_t k,
                               Rng& rng) {
  const std::size_t n = pts.size();
  std::vector<std::vector<double>> centers;
  centers.reserve(k);

  // k-means++ seeding
  centers.push_back(pts[rng.below(n)]);
  std::vector<double> d2(n);
  while (centers.size() < k) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : centers) best = std::min(best, sqdist(pts[i], c));
      d2[i] = best;
      total += best;
    }
    if (total <= 0.0) {
      // All remaining mass sits on existing centers; duplicate one.
      centers.push_back(pts[rng.below(n)]);
      continue;
    }
    double target = rng.uniform() * total;
    std::size_t chosen = n - 1;
    for (std::size_t i = 0; i < n; ++i) {
      target -= d2[i];
      if (target <= 0.0) {
        chosen = i;
        break;
      }
    }
    centers.push_back(pts[chosen]);
  }

  std::vector<int> labels(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      int bl = 0;
      for (std::size_t c = 0; c < k; ++c) {
        const double d = sqdist(pts[i], centers[c]);
        if (d < best) {
          best = d;
          bl = static_cast<int>(c);
        }
      }
      if (bl != labels[i]) {
        labels[i] = bl;
        changed = true;
      }
    }
    std::vector<std::vector<double>> sums(k, std::vector<double>(pts[0].size(), 0.0));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[static_cast<std::size_t>(labels[i])];
      for (std::size_t dim = 0; dim < pts[i].size(); ++dim)
        sums[static_cast<std::size_t>(labels[i])][dim] += pts[i][dim];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] == 0) {
        // Re-seed an empty cluster at the point farthest from its center.
        double worst = -1.0;
        std::size_t pick = 0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = sqdist(pts[i], centers[static_cast<std::size_t>(labels[i])]);
          if (d > worst) {
            worst = d;
            pick = i;
          }
        }
        centers[c] = pts[pick];
        changed = true;
      } else {
        for (std::size_t dim = 0; dim < sums[c].size(); ++dim)
          centers[c][dim] = sums[c][dim] / static_cast<double>(counts[c]);
      }
    }
    if (!changed) break;
  }

  KMeansResult out;
  out.labels = std::move(labels);
  for (std::size_t i = 0; i < n; ++i)
    out.inertia += sqdist(pts[i], centers[static_cast<std::size_t>(out.labels[i])]);
  return out;
}

}  // namespace kmeans_detail

/// k-means with k-means++ seeding, multiple restarts from a caller-supplied
/// seed, best inertia wins. Deterministic given the seed.
inline KMeansResult kmeans(const std::vector<std::vector<double>>& pts, std::size_t k,
                           std::uint64_t seed, int restarts = 50) {
  if (pts.empty()) return {};
  if (k == 0) throw ConfigError("kmeans: k must be >= 1");
  if (k >= pts.size()) {
    KMeansResult all;
    all.labels.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all.labels[i] = static_cast<int>(i);
    return all;
  }
  Rng rng(seed);
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    auto res = kmeans_detail::lloyd_once(pts, k, rng);
    if (res.inertia < best.inertia) best = std::move(res);
  }
  return best;
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_KMEANS_HPP
