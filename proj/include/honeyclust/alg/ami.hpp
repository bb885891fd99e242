// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_AMI_HPP
#define HONEYCLUST_ALG_AMI_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "honeyclust/alg/partition.hpp"
#include "honeyclust/core/errors.hpp"

namespace honeyclust::alg {

namespace ami_detail {

/// Log-factorial table: lgf[v] = ln(v!).
inline std::vector<double> log_factorials(std::size_t n) {
  std::vector<double> lgf(n + 1, 0.0);
  for (std::size_t v = 2; v <= n; ++v) lgf[v] = lgf[v - 1] + std::log(static_cast<double>(v));
  return lgf;
}

/// Expected mutual information contribution of one marginal pair (a, b)
/// under the permutation (hypergeometric) model with n points:
///   g(a,b) = sum_v (v/n) ln(n v / (a b)) P[N_ij = v],
/// v ranging over max(1, a+b-n) .. min(a,b).
inline double emi_term(std::size_t a, std::size_t b, std::size_t n,
                       const std::vector<double>& lgf) {
  if (a == 0 || b == 0) return 0.0;
  const double dn = static_cast<double>(n);
  const std::size_t lo = (a + b > n) ? a + b - n : 1;
  const std::size_t hi = std::min(a, b);
  double sum = 0.0;
  for (std::size_t v = lo; v <= hi; ++v) {
    const double dv = static_cast<double>(v);
    const double log_p = lgf[a] + lgf[b] + lgf[n - a] + lgf[n - b] - lgf[n] - lgf[v] -
                         lgf[a - v] - lgf[b - v] - lgf[n - a - b + v];
    sum += (dv / dn) * std::log(dn * dv / (static_cast<double>(a) * static_cast<double>(b))) *
           std::exp(log_p);
  }
  return sum;
}

inline double entropy(const std::vector<std::size_t>& sizes, std::size_t n) {
  double h = 0.0;
  for (std::size_t s : sizes) {
    if (s == 0) continue;
    const double p = static_cast<double>(s) / static_cast<double>(n);
    h -= p * std::log(p);
  }
  return h;
}

/// Remaps labels so every noise point (-1) becomes its own singleton cluster
/// and labels are dense 0..k-1.
inline std::vector<int> noise_to_singletons(const std::vector<int>& labels) {
  std::map<int, int> remap;
  int next = 0;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) {
      out[i] = next++;
    } else {
      auto [it, inserted] = remap.emplace(labels[i], next);
      if (inserted) ++next;
      out[i] = it->second;
    }
  }
  return out;
}

}  // namespace ami_detail

/// Adjusted mutual information between two labelings of the same n points.
/// Noise points are first converted to singleton clusters. Normalization is
/// the arithmetic mean of the entropies:
///   AMI = (MI - E[MI]) / (mean(H1, H2) - E[MI]).
/// Requires n >= 2.
inline double ami_labels(const std::vector<int>& raw1, const std::vector<int>& raw2) {
  if (raw1.size() != raw2.size()) throw InvariantError("ami: label vectors differ in length");
  const std::size_t n = raw1.size();
  if (n < 2) throw DataError("ami: needs at least 2 points");

  const auto l1 = ami_detail::noise_to_singletons(raw1);
  const auto l2 = ami_detail::noise_to_singletons(raw2);
  const int k1 = 1 + *std::max_element(l1.begin(), l1.end());
  const int k2 = 1 + *std::max_element(l2.begin(), l2.end());

  std::vector<std::size_t> a(static_cast<std::size_t>(k1), 0);
  std::vector<std::size_t> b(static_cast<std::size_t>(k2), 0);
  std::map<std::pair<int, int>, std::size_t> cells;
  for (std::size_t i = 0; i < n; ++i) {
    ++a[static_cast<std::size_t>(l1[i])];
    ++b[static_cast<std::size_t>(l2[i])];
    ++cells[{l1[i], l2[i]}];
  }

  const double dn = static_cast<double>(n);
  double mi = 0.0;
  for (const auto& [cell, cnt] : cells) {
    const double nij = static_cast<double>(cnt);
    const double ai = static_cast<double>(a[static_cast<std::size_t>(cell.first)]);
    const double bj = static_cast<double>(b[static_cast<std::size_t>(cell.second)]);
    mi += (nij / dn) * std::log(dn * nij / (ai * bj));
  }

  const auto lgf = ami_detail::log_factorials(n);
  double emi = 0.0;
  for (std::size_t ai : a) {
    for (std::size_t bj : b) emi += ami_detail::emi_term(ai, bj, n, lgf);
  }

  const double h1 = ami_detail::entropy(a, n);
  const double h2 = ami_detail::entropy(b, n);
  const double denom = 0.5 * (h1 + h2) - emi;
  if (std::abs(denom) < 1e-15) {
    // Both labelings are trivial (single cluster each): a perfect match.
    return 1.0;
  }
  return (mi - emi) / denom;
}

/// AMI between two partitions, evaluated on the intersection of their
/// universes. Returns nullopt when fewer than 2 IPs are shared.
inline std::optional<double> ami(const Partition& p1, const Partition& p2) {
  std::vector<int> l1, l2;
  std::size_t i = 0, j = 0;
  while (i < p1.universe.size() && j < p2.universe.size()) {
    if (p1.universe[i] < p2.universe[j]) {
      ++i;
    } else if (p2.universe[j] < p1.universe[i]) {
      ++j;
    } else {
      l1.push_back(p1.labels[i]);
      l2.push_back(p2.labels[j]);
      ++i;
      ++j;
    }
  }
  if (l1.size() < 2) return std::nullopt;
  return ami_labels(l1, l2);
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_AMI_HPP
