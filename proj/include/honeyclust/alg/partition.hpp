// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_PARTITION_HPP
#define HONEYCLUST_ALG_PARTITION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "honeyclust/core/errors.hpp"
#include "honeyclust/core/ip.hpp"

namespace honeyclust::alg {

inline constexpr int kNoise = -1;

/// A labeling of a subset of IPs into clusters. Labels >= 0 form a contiguous
/// range 0..k-1; kNoise marks points no cluster claims. The universe is kept
/// sorted ascending, so equal inputs serialize to equal bytes.
struct Partition {
  std::vector<IpAddr> universe;  // sorted ascending
  std::vector<int> labels;       // parallel to universe
  std::string method_tag;

  Partition() = default;
  Partition(std::vector<IpAddr> ips, std::vector<int> labs, std::string tag)
      : universe(std::move(ips)), labels(std::move(labs)), method_tag(std::move(tag)) {
    sort_by_ip();
    compact_labels();
  }

  std::size_t size() const { return universe.size(); }

  int n_clusters() const {
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    return k;
  }

  std::optional<int> label_of(const IpAddr& ip) const {
    auto it = std::lower_bound(universe.begin(), universe.end(), ip);
    if (it == universe.end() || !(*it == ip)) return std::nullopt;
    return labels[static_cast<std::size_t>(it - universe.begin())];
  }

  /// Renumbers cluster labels to 0..k-1 in order of first appearance along
  /// the sorted universe. Canonical form for comparisons and serialization.
  void compact_labels() {
    std::map<int, int> remap;
    int next = 0;
    for (int l : labels) {
      if (l < 0) continue;
      if (!remap.count(l)) remap[l] = next++;
    }
    for (auto& l : labels) {
      if (l >= 0) l = remap[l];
    }
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["method"] = method_tag;
    nlohmann::json ips = nlohmann::json::array();
    for (const auto& ip : universe) ips.push_back(ip.to_string());
    j["universe"] = std::move(ips);
    j["labels"] = labels;
    return j;
  }

  static Partition from_json(const nlohmann::json& j) {
    Partition p;
    p.method_tag = j.at("method").get<std::string>();
    for (const auto& s : j.at("universe")) {
      auto ip = IpAddr::parse(s.get<std::string>());
      if (!ip) throw DataError("partition file holds a non-IP: " + s.get<std::string>());
      p.universe.push_back(*ip);
    }
    p.labels = j.at("labels").get<std::vector<int>>();
    if (p.labels.size() != p.universe.size())
      throw DataError("partition universe/labels length mismatch");
    p.sort_by_ip();
    p.compact_labels();
    return p;
  }

  std::string to_csv() const {
    std::string out = "ip,method_tag,label\n";
    for (std::size_t i = 0; i < universe.size(); ++i) {
      out += universe[i].to_string();
      out += ',';
      out += method_tag;
      out += ',';
      out += std::to_string(labels[i]);
      out += '\n';
    }
    return out;
  }

private:
  void sort_by_ip() {
    std::vector<std::size_t> idx(universe.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return universe[a] < universe[b]; });
    std::vector<IpAddr> u2(universe.size());
    std::vector<int> l2(labels.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      u2[i] = universe[idx[i]];
      l2[i] = labels[idx[i]];
    }
    for (std::size_t i = 1; i < u2.size(); ++i) {
      if (u2[i] == u2[i - 1]) throw InvariantError("duplicate IP in partition universe");
    }
    universe = std::move(u2);
    labels = std::move(l2);
  }
};

/// Symmetric pairwise dissimilarities over n indexed points. Only the upper
/// triangle is stored.
class DistanceMatrix {
public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * (n - 1) / 2, 0.0) {}

  std::size_t size() const { return n_; }

  double operator()(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    return d_[index(i, j)];
  }

  void set(std::size_t i, std::size_t j, double v) {
    if (i == j) {
      if (v != 0.0) throw InvariantError("distance matrix diagonal must be zero");
      return;
    }
    d_[index(i, j)] = v;
  }

private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    // offset of row i in the packed upper triangle
    return i * n_ - i * (i + 1) / 2 + (j - i - 1);
  }

  std::size_t n_ = 0;
  std::vector<double> d_;
};

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_PARTITION_HPP
