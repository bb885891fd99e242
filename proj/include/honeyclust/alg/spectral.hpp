// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_SPECTRAL_HPP
#define HONEYCLUST_ALG_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "honeyclust/alg/eigen.hpp"
#include "honeyclust/alg/kmeans.hpp"
#include "honeyclust/core/errors.hpp"

namespace honeyclust::alg {

/// Symmetric 0/1 adjacency with zero diagonal.
class Adjacency {
public:
  explicit Adjacency(std::size_t n) : n_(n), a_(n * n, 0) {}
  std::size_t size() const { return n_; }
  bool at(std::size_t i, std::size_t j) const { return a_[i * n_ + j] != 0; }
  void add_edge(std::size_t i, std::size_t j) {
    if (i == j) return;
    a_[i * n_ + j] = 1;
    a_[j * n_ + i] = 1;
  }
  std::size_t degree(std::size_t i) const {
    std::size_t d = 0;
    for (std::size_t j = 0; j < n_; ++j) d += a_[i * n_ + j];
    return d;
  }

private:
  std::size_t n_;
  std::vector<std::uint8_t> a_;
};

struct SpectralResult {
  std::vector<double> eigenvalues;  // ascending, first min(k_max+1, n_active) of them
  int chosen_k = 1;
  std::vector<int> labels;  // per input node, contiguous 0..k-1
};

/// Spectral clustering on the normalized symmetric Laplacian
/// L = I - D^{-1/2} A D^{-1/2} with eigengap model selection:
/// chosen_k = argmax over i in [k_min, k_max] of (lambda_{i+1} - lambda_i),
/// smallest i on ties. Isolated nodes are removed first and come back as
/// singleton clusters. When every gap in range is degenerate (below 1e-9,
/// e.g. a single clique) the active nodes form one cluster.
inline SpectralResult spectral_cluster(const Adjacency& adj, int k_min, int k_max,
                                       std::uint64_t seed) {
  if (k_min < 2) throw ConfigError("spectral_cluster: k_min must be >= 2");
  if (k_max < k_min) throw ConfigError("spectral_cluster: k_max must be >= k_min");
  const std::size_t n = adj.size();
  SpectralResult out;
  out.labels.assign(n, 0);
  if (n == 0) return out;

  std::vector<std::size_t> active;
  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = adj.degree(i);
    if (degree[i] > 0) active.push_back(i);
  }

  const std::size_t na = active.size();
  std::vector<int> active_labels(na, 0);
  if (na >= static_cast<std::size_t>(k_min)) {
    SymMatrix lap(na);
    for (std::size_t x = 0; x < na; ++x) {
      for (std::size_t y = 0; y < na; ++y) {
        const std::size_t i = active[x], j = active[y];
        double v = (x == y) ? 1.0 : 0.0;
        if (adj.at(i, j))
          v -= 1.0 / std::sqrt(static_cast<double>(degree[i]) * static_cast<double>(degree[j]));
        lap.at(x, y) = v;
      }
    }
    const auto eig = jacobi_eigen_sym(std::move(lap));

    const int k_hi = std::min<int>(k_max, static_cast<int>(na) - 1);
    const std::size_t n_eval = std::min<std::size_t>(na, static_cast<std::size_t>(k_hi) + 1);
    out.eigenvalues.assign(eig.values.begin(), eig.values.begin() + static_cast<long>(n_eval));

    int chosen = k_min;
    double best_gap = -1.0;
    for (int k = k_min; k <= k_hi; ++k) {
      const double gap = eig.values[static_cast<std::size_t>(k)] -
                         eig.values[static_cast<std::size_t>(k) - 1];
      // Strictly-better with a tolerance, so solver noise cannot displace
      // the smallest k on a tie.
      if (gap > best_gap + 1e-12) {
        best_gap = gap;
        chosen = k;
      }
    }
    out.chosen_k = chosen;

    if (best_gap <= 1e-9) {
      // No usable spectral structure; the active subgraph is one tight block.
      std::fill(active_labels.begin(), active_labels.end(), 0);
    } else {
      std::vector<std::vector<double>> rows(na, std::vector<double>(chosen, 0.0));
      for (std::size_t x = 0; x < na; ++x) {
        double norm = 0.0;
        for (int c = 0; c < chosen; ++c) {
          const double v = eig.vectors[static_cast<std::size_t>(c)][x];
          rows[x][static_cast<std::size_t>(c)] = v;
          norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm > 1e-12)
          for (auto& v : rows[x]) v /= norm;
      }
      active_labels = kmeans(rows, static_cast<std::size_t>(chosen), seed).labels;
    }
  }
  // else: graph smaller than k_min, a single cluster of all active nodes.

  // Stitch active labels and isolated singletons together, compacting labels.
  std::vector<int> remap;
  auto compact = [&](int raw) {
    for (std::size_t i = 0; i < remap.size(); ++i)
      if (remap[i] == raw) return static_cast<int>(i);
    remap.push_back(raw);
    return static_cast<int>(remap.size() - 1);
  };
  std::vector<int> final_labels(n, -1);
  for (std::size_t x = 0; x < na; ++x) final_labels[active[x]] = compact(active_labels[x]);
  int next = static_cast<int>(remap.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (final_labels[i] < 0) final_labels[i] = next++;
  }
  out.labels = std::move(final_labels);
  return out;
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_SPECTRAL_HPP
