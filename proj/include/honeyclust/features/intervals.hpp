// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_FEATURES_INTERVALS_HPP
#define HONEYCLUST_FEATURES_INTERVALS_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "honeyclust/alg/dtw.hpp"
#include "honeyclust/alg/optics.hpp"
#include "honeyclust/alg/partition.hpp"
#include "honeyclust/core/parallel.hpp"
#include "honeyclust/features/params.hpp"
#include "honeyclust/profile/profile.hpp"

namespace honeyclust::features {

struct IntervalConfig {
  Duration window_length = 14 * kDay;
  Duration bin_width = 60 * kSecond;
  std::size_t dtw_band = 60;  // in bins
  std::size_t min_shared_windows = 1;
  double co_cluster_distance_threshold = 0.5;
  OpticsParams optics;
  unsigned workers = 0;  // 0: hardware concurrency
};

/// Per-window co-clustering counts: shared = windows a pair appeared in
/// together, co = windows the pair landed in the same OPTICS cluster.
struct IntervalEvidence {
  std::vector<IpAddr> ips;  // IPs with >= 2 probes, ascending
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> shared;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> co;
};

/// Bins each participating IP's probes into per-window count timeseries
/// (windows tile the observed span, so a global time shift changes nothing),
/// runs pairwise banded DTW + OPTICS per window, and accumulates the
/// co-clustering counts.
inline IntervalEvidence gather_interval_evidence(const profile::ProfileMap& profiles,
                                                 const IntervalConfig& cfg = {}) {
  if (cfg.window_length <= cfg.bin_width)
    throw ConfigError("interval config: window_length must exceed bin_width");

  IntervalEvidence ev;
  std::vector<const std::vector<Instant>*> probes;
  for (const auto& [ip, p] : profiles) {
    if (p.probe_timestamps.size() >= 2) {
      ev.ips.push_back(ip);
      probes.push_back(&p.probe_timestamps);
    }
  }
  const std::size_t n = ev.ips.size();
  if (n < 2) return ev;

  Instant t0 = probes[0]->front(), t_max = probes[0]->back();
  for (const auto* ts : probes) {
    t0 = std::min(t0, ts->front());
    t_max = std::max(t_max, ts->back());
  }
  const std::size_t n_windows =
      static_cast<std::size_t>((t_max - t0) / cfg.window_length) + 1;

  for (std::size_t w = 0; w < n_windows; ++w) {
    const Instant win_start = t0 + static_cast<Instant>(w) * cfg.window_length;
    const Instant win_end = std::min(win_start + cfg.window_length, t_max + 1);
    const std::size_t bins =
        static_cast<std::size_t>((win_end - win_start + cfg.bin_width - 1) / cfg.bin_width);
    if (bins == 0) continue;

    std::vector<std::size_t> present;
    std::vector<std::vector<double>> series;
    for (std::size_t i = 0; i < n; ++i) {
      auto lo = std::lower_bound(probes[i]->begin(), probes[i]->end(), win_start);
      auto hi = std::lower_bound(probes[i]->begin(), probes[i]->end(), win_end);
      if (lo == hi) continue;
      std::vector<double> s(bins, 0.0);
      for (auto it = lo; it != hi; ++it)
        s[static_cast<std::size_t>((*it - win_start) / cfg.bin_width)] += 1.0;
      present.push_back(i);
      series.push_back(std::move(s));
    }
    if (present.size() < 2) continue;

    const std::size_t m = present.size();
    alg::DistanceMatrix dm(m);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) pairs.emplace_back(a, b);
    std::vector<double> dist(pairs.size());
    parallel_for(pairs.size(), cfg.workers, [&](std::size_t k) {
      dist[k] = alg::dtw(series[pairs[k].first], series[pairs[k].second], cfg.dtw_band);
    });
    for (std::size_t k = 0; k < pairs.size(); ++k)
      dm.set(pairs[k].first, pairs[k].second, dist[k]);

    const auto labels = alg::optics(dm, cfg.optics.min_samples, cfg.optics.xi);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = a + 1; b < m; ++b) {
        const auto key = std::minmax(present[a], present[b]);
        ++ev.shared[{key.first, key.second}];
        if (labels[a] >= 0 && labels[a] == labels[b]) ++ev.co[{key.first, key.second}];
      }
    }
  }
  return ev;
}

/// Probe-schedule clustering. Final distance for a pair with enough shared
/// windows is 1 - co/shared (clamped to 1 above the evidence threshold); a
/// final OPTICS pass over that matrix yields the partition. IPs that never
/// share a window with anyone stay outside the universe.
inline alg::Partition cluster_intervals(const profile::ProfileMap& profiles,
                                        const IntervalConfig& cfg = {}) {
  const auto ev = gather_interval_evidence(profiles, cfg);
  const std::size_t n = ev.ips.size();
  if (n < 2) return alg::Partition({}, {}, "intervals");

  std::vector<bool> keep(n, false);
  for (const auto& [pair, cnt] : ev.shared) {
    if (cnt >= cfg.min_shared_windows) keep[pair.first] = keep[pair.second] = true;
  }
  std::vector<std::size_t> final_ids;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) final_ids.push_back(i);
  if (final_ids.size() < 2) return alg::Partition({}, {}, "intervals");

  std::vector<std::size_t> pos(n, 0);
  for (std::size_t x = 0; x < final_ids.size(); ++x) pos[final_ids[x]] = x;
  alg::DistanceMatrix fm(final_ids.size());
  for (std::size_t a = 0; a < final_ids.size(); ++a)
    for (std::size_t b = a + 1; b < final_ids.size(); ++b) fm.set(a, b, 1.0);
  for (const auto& [pair, cnt] : ev.shared) {
    if (cnt < cfg.min_shared_windows) continue;
    const auto it = ev.co.find(pair);
    const double frac = it == ev.co.end() ? 0.0 : static_cast<double>(it->second) / cnt;
    double d = 1.0 - frac;
    if (d > cfg.co_cluster_distance_threshold) d = 1.0;
    fm.set(pos[pair.first], pos[pair.second], d);
  }

  const auto labels = alg::optics(fm, cfg.optics.min_samples, cfg.optics.xi);
  std::vector<IpAddr> universe;
  for (auto i : final_ids) universe.push_back(ev.ips[i]);
  return alg::Partition(std::move(universe), labels, "intervals");
}

}  // namespace honeyclust::features

#endif  // HONEYCLUST_FEATURES_INTERVALS_HPP
