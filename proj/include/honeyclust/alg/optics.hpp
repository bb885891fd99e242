// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_OPTICS_HPP
#define HONEYCLUST_ALG_OPTICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <set>
#include <vector>

#include "honeyclust/alg/partition.hpp"
#include "honeyclust/core/errors.hpp"

namespace honeyclust::alg {

struct OpticsOrdering {
  std::vector<std::size_t> order;     // processing order of point indices
  std::vector<double> reachability;   // reachability at pop time, per point
};

namespace optics_detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Core distance: smallest radius holding at least min_samples points,
/// the point itself included.
inline std::vector<double> core_distances(const DistanceMatrix& dm, std::size_t min_samples) {
  const std::size_t n = dm.size();
  std::vector<double> core(n, kInf);
  if (n < min_samples) return core;
  std::vector<double> row(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) row[q] = dm(p, q);
    std::nth_element(row.begin(), row.begin() + static_cast<long>(min_samples - 1), row.end());
    core[p] = row[min_samples - 1];
  }
  return core;
}

// Steepness needs a strict change; a flat stretch (including all-zero
// valleys) is neither steep up nor steep down.
inline bool steep_up(const std::vector<double>& r, std::size_t i, double xc) {
  return r[i] < r[i + 1] && (r[i + 1] == kInf || r[i] <= r[i + 1] * xc);
}

inline bool steep_down(const std::vector<double>& r, std::size_t i, double xc) {
  return r[i] > r[i + 1] && (r[i] == kInf || r[i] * xc >= r[i + 1]);
}

struct SteepDownArea {
  std::size_t start, end;
  double mib;  // max reachability observed since the area closed
};

}  // namespace optics_detail

/// Computes the OPTICS reachability ordering with eps = infinity.
/// Tie-break everywhere is ascending point index, making the result a pure
/// function of the distance matrix.
inline OpticsOrdering optics_ordering(const DistanceMatrix& dm, std::size_t min_samples) {
  using optics_detail::kInf;
  const std::size_t n = dm.size();
  const auto core = optics_detail::core_distances(dm, min_samples);

  OpticsOrdering out;
  out.order.reserve(n);
  out.reachability.assign(n, kInf);

  std::vector<bool> processed(n, false);
  std::vector<double> reach(n, kInf);
  std::set<std::pair<double, std::size_t>> seeds;

  auto expand = [&](std::size_t p) {
    processed[p] = true;
    out.order.push_back(p);
    out.reachability[p] = reach[p];
    if (core[p] == kInf) return;
    for (std::size_t q = 0; q < n; ++q) {
      if (processed[q]) continue;
      const double nr = std::max(core[p], dm(p, q));
      if (nr < reach[q]) {
        seeds.erase({reach[q], q});
        reach[q] = nr;
        seeds.insert({reach[q], q});
      }
    }
  };

  for (std::size_t start = 0; start < n; ++start) {
    if (processed[start]) continue;
    reach[start] = kInf;
    expand(start);
    while (!seeds.empty()) {
      const auto [r, q] = *seeds.begin();
      seeds.erase(seeds.begin());
      expand(q);
    }
  }
  return out;
}

/// Extracts xi-steep clusters from a reachability ordering. Returns one label
/// per original point index; unclaimed points get kNoise. Nested cluster
/// intervals resolve to leaves (innermost wins).
inline std::vector<int> optics_extract_xi(const OpticsOrdering& ord, std::size_t min_samples,
                                          double xi) {
  using optics_detail::kInf;
  using optics_detail::steep_down;
  using optics_detail::steep_up;
  const std::size_t n = ord.order.size();
  std::vector<int> labels(n, kNoise);
  if (n < 2) return labels;

  // Reachability in processed order, with an infinite sentinel so a trailing
  // valley still closes on a steep-up edge.
  std::vector<double> r(n + 1);
  for (std::size_t i = 0; i < n; ++i) r[i] = ord.reachability[ord.order[i]];
  r[n] = kInf;

  const double xc = 1.0 - xi;
  const std::size_t max_flat = min_samples;
  const std::size_t min_cluster = std::max<std::size_t>(2, min_samples);

  // Extends a steep area from `s`: steep points reset the flat budget, at most
  // max_flat consecutive non-steep points are tolerated, an opposite-direction
  // move ends the area. Returns the last steep index.
  auto extend = [&](std::size_t s, auto is_steep, auto is_reversal) {
    std::size_t end = s, flat = 0;
    for (std::size_t x = s + 1; x < n; ++x) {
      if (is_steep(x)) {
        end = x;
        flat = 0;
      } else if (is_reversal(x)) {
        break;
      } else if (++flat > max_flat) {
        break;
      }
    }
    return end;
  };

  std::vector<optics_detail::SteepDownArea> sdas;
  std::vector<std::pair<std::size_t, std::size_t>> clusters;  // inclusive [s, e]

  // Drops steep-down areas whose entry wall no longer dominates everything
  // seen since; survivors remember the in-between maximum.
  auto filter_sdas = [&](double mib) {
    std::vector<optics_detail::SteepDownArea> kept;
    for (auto d : sdas) {
      if (r[d.start] == kInf || r[d.start] * xc >= mib) {
        d.mib = std::max(d.mib, mib);
        kept.push_back(d);
      }
    }
    sdas = std::move(kept);
  };

  double mib = 0.0;
  std::size_t i = 0;
  while (i < n) {  // predicates look at the pair (i, i+1); r[n] is the sentinel
    mib = std::max(mib, r[i]);
    if (steep_down(r, i, xc)) {
      filter_sdas(mib);
      const std::size_t end = extend(
          i, [&](std::size_t x) { return steep_down(r, x, xc); },
          [&](std::size_t x) { return r[x] < r[x + 1]; });
      sdas.push_back({i, end, 0.0});
      i = end + 1;
      mib = 0.0;
    } else if (steep_up(r, i, xc)) {
      filter_sdas(mib);
      const std::size_t up_start = i;
      const std::size_t up_end = extend(
          i, [&](std::size_t x) { return steep_up(r, x, xc); },
          [&](std::size_t x) { return r[x] > r[x + 1]; });
      const double end_wall = r[up_end + 1];
      // Newest-first so nested (inner) clusters are recorded before parents.
      for (auto it = sdas.rbegin(); it != sdas.rend(); ++it) {
        const auto& d = *it;
        if (end_wall != kInf && d.mib > end_wall * xc) continue;
        const double start_wall = r[d.start];
        std::size_t cs = d.start;
        std::size_t ce = std::min(up_end, n - 1);
        if (start_wall == kInf || (end_wall != kInf && start_wall * xc >= end_wall)) {
          // Left wall dominates: start at the last area point above the right wall.
          for (std::size_t x = d.start; x <= d.end; ++x) {
            if (r[x] > end_wall) cs = x;
          }
        } else if (end_wall == kInf || end_wall * xc >= start_wall) {
          // Right wall dominates: end at the last climb point below the left wall.
          std::size_t best = ce;
          bool found = false;
          for (std::size_t x = up_start; x <= ce; ++x) {
            if (r[x] < start_wall) {
              best = x;
              found = true;
            }
          }
          if (found) ce = best;
        }
        if (ce < cs || ce - cs + 1 < min_cluster) continue;
        clusters.emplace_back(cs, ce);
      }
      i = up_end + 1;
      mib = 0.0;
    } else {
      ++i;
    }
  }

  int next_label = 0;
  std::vector<int> by_position(n, kNoise);
  for (const auto& [s, e] : clusters) {
    bool free = true;
    for (std::size_t x = s; x <= e && free; ++x) free = by_position[x] == kNoise;
    if (!free) continue;
    for (std::size_t x = s; x <= e; ++x) by_position[x] = next_label;
    ++next_label;
  }
  for (std::size_t pos = 0; pos < n; ++pos) labels[ord.order[pos]] = by_position[pos];
  return labels;
}

/// OPTICS density clustering over a precomputed distance matrix: reachability
/// ordering with eps = infinity, then xi-steepness extraction. Points in no
/// cluster are labeled kNoise. Fewer points than min_samples means all noise.
inline std::vector<int> optics(const DistanceMatrix& dm, std::size_t min_samples, double xi) {
  if (min_samples < 2) throw ConfigError("optics: min_samples must be >= 2");
  if (!(xi > 0.0 && xi < 1.0)) throw ConfigError("optics: xi must be in (0, 1)");
  if (dm.size() < min_samples) return std::vector<int>(dm.size(), kNoise);
  const auto ord = optics_ordering(dm, min_samples);
  return optics_extract_xi(ord, min_samples, xi);
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_OPTICS_HPP
