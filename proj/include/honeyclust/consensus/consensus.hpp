// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_CONSENSUS_CONSENSUS_HPP
#define HONEYCLUST_CONSENSUS_CONSENSUS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "honeyclust/alg/ami.hpp"
#include "honeyclust/alg/partition.hpp"
#include "honeyclust/core/errors.hpp"

namespace honeyclust::consensus {

/// Pairwise AMI between methods plus per-method averages (the diagonal and
/// pairs with insufficient universe overlap are excluded from averages).
struct AmiTable {
  std::vector<std::string> methods;
  std::vector<std::vector<std::optional<double>>> matrix;
  std::vector<std::optional<double>> averages;

  void compute_averages() {
    averages.assign(methods.size(), std::nullopt);
    for (std::size_t i = 0; i < methods.size(); ++i) {
      double sum = 0.0;
      std::size_t cnt = 0;
      for (std::size_t j = 0; j < methods.size(); ++j) {
        if (i == j || !matrix[i][j]) continue;
        sum += *matrix[i][j];
        ++cnt;
      }
      if (cnt > 0) averages[i] = sum / static_cast<double>(cnt);
    }
  }

  std::string to_csv() const {
    std::string out = "method";
    for (const auto& m : methods) out += "," + m;
    out += ",average\n";
    char buf[32];
    auto cell = [&buf](const std::optional<double>& v) -> std::string {
      if (!v) return "";
      std::snprintf(buf, sizeof(buf), "%.6f", *v);
      return buf;
    };
    for (std::size_t i = 0; i < methods.size(); ++i) {
      out += methods[i];
      for (std::size_t j = 0; j < methods.size(); ++j) out += "," + cell(matrix[i][j]);
      out += "," + cell(averages[i]) + "\n";
    }
    return out;
  }
};

inline AmiTable ami_table(const std::vector<alg::Partition>& inputs) {
  if (inputs.size() < 2) throw ConfigError("ami_table needs at least 2 partitions");
  AmiTable t;
  const std::size_t n = inputs.size();
  t.methods.reserve(n);
  for (const auto& p : inputs) t.methods.push_back(p.method_tag);
  t.matrix.assign(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    t.matrix[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto v = alg::ami(inputs[i], inputs[j]);
      t.matrix[i][j] = v;
      t.matrix[j][i] = v;
    }
  }
  t.compute_averages();
  return t;
}

namespace detail {

/// Incrementally maintained AMI between the evolving base labeling and one
/// fixed input partition, over the input's universe. Noise points count as
/// singleton clusters on both sides. Row keys: real base labels >= 0, or
/// -(point+2) for base-noise singletons.
class AmiAccumulator {
public:
  AmiAccumulator(const std::vector<int>& input_labels) : m_(input_labels.size()) {
    col_.resize(m_);
    std::map<int, int> remap;
    int next = 0;
    for (std::size_t p = 0; p < m_; ++p) {
      if (input_labels[p] < 0) {
        col_[p] = next++;
      } else {
        auto [it, inserted] = remap.emplace(input_labels[p], next);
        if (inserted) ++next;
        col_[p] = it->second;
      }
    }
    b_.assign(static_cast<std::size_t>(next), 0);
    for (std::size_t p = 0; p < m_; ++p) ++b_[static_cast<std::size_t>(col_[p])];

    lgf_ = alg::ami_detail::log_factorials(m_);
    h_input_ = alg::ami_detail::entropy(b_, m_);
    std::map<std::size_t, std::size_t> hist;
    for (auto v : b_) ++hist[v];
    b_hist_.assign(hist.begin(), hist.end());
    gsum_memo_.assign(m_ + 1, std::nullopt);
  }

  std::size_t size() const { return m_; }

  /// Installs the initial base labels (noise < 0) and computes all stats.
  void reset_base(const std::vector<int>& base_labels) {
    rows_.clear();
    a_.clear();
    key_.resize(m_);
    for (std::size_t p = 0; p < m_; ++p) {
      key_[p] = base_labels[p] >= 0 ? base_labels[p] : noise_key(p);
      ++rows_[key_[p]][col_[p]];
      ++a_[key_[p]];
    }
    recompute();
  }

  static int noise_key(std::size_t p) { return -static_cast<int>(p) - 2; }
  int key_of(std::size_t p) const { return key_[p]; }

  /// Moves point p to row `to` and updates MI, H(base) and E[MI] in O(row).
  void move(std::size_t p, int to) {
    const int from = key_[p];
    if (from == to) return;
    const int j = col_[p];

    mi_ -= row_mi(from) + row_mi(to);
    h_base_ -= entropy_term(a_count(from)) + entropy_term(a_count(to));
    emi_ -= gsum(a_count(from)) + gsum(a_count(to));

    auto& fr = rows_[from];
    if (--fr[j] == 0) fr.erase(j);
    if (--a_[from] == 0) {
      rows_.erase(from);
      a_.erase(from);
    }
    ++rows_[to][j];
    ++a_[to];
    key_[p] = to;

    mi_ += row_mi(from) + row_mi(to);
    h_base_ += entropy_term(a_count(from)) + entropy_term(a_count(to));
    emi_ += gsum(a_count(from)) + gsum(a_count(to));
  }

  double ami() const {
    const double denom = 0.5 * (h_base_ + h_input_) - emi_;
    if (std::abs(denom) < 1e-15) return 1.0;
    return (mi_ - emi_) / denom;
  }

  /// Rebuilds MI, H(base) and E[MI] from the contingency structure. Used to
  /// pin down incremental drift after every applied move.
  void recompute() {
    mi_ = 0.0;
    for (const auto& [key, row] : rows_) mi_ += row_mi(key);
    h_base_ = 0.0;
    for (const auto& [key, cnt] : a_) h_base_ += entropy_term(cnt);
    emi_ = 0.0;
    for (const auto& [key, cnt] : a_) emi_ += gsum(cnt);
  }

  double mi() const { return mi_; }

private:
  std::size_t a_count(int key) const {
    const auto it = a_.find(key);
    return it == a_.end() ? 0 : it->second;
  }

  double entropy_term(std::size_t count) const {
    if (count == 0) return 0.0;
    const double p = static_cast<double>(count) / static_cast<double>(m_);
    return -p * std::log(p);
  }

  double row_mi(int key) const {
    const auto it = rows_.find(key);
    if (it == rows_.end()) return 0.0;
    const double dm = static_cast<double>(m_);
    const double ai = static_cast<double>(a_.at(key));
    double s = 0.0;
    for (const auto& [j, nij] : it->second) {
      const double bj = static_cast<double>(b_[static_cast<std::size_t>(j)]);
      s += (nij / dm) * std::log(dm * nij / (ai * bj));
    }
    return s;
  }

  double gsum(std::size_t a) {
    if (a == 0) return 0.0;
    if (gsum_memo_[a]) return *gsum_memo_[a];
    double s = 0.0;
    for (const auto& [bv, count] : b_hist_)
      s += static_cast<double>(count) * alg::ami_detail::emi_term(a, bv, m_, lgf_);
    gsum_memo_[a] = s;
    return s;
  }

  std::size_t m_;
  std::vector<int> col_;
  std::vector<std::size_t> b_;
  std::vector<std::pair<std::size_t, std::size_t>> b_hist_;
  std::vector<double> lgf_;
  std::vector<std::optional<double>> gsum_memo_;
  double h_input_ = 0.0;

  std::vector<int> key_;
  std::map<int, std::map<int, int>> rows_;
  std::map<int, std::size_t> a_;
  double mi_ = 0.0, h_base_ = 0.0, emi_ = 0.0;
};

}  // namespace detail

struct MoveRecord {
  IpAddr ip;
  int old_label = alg::kNoise;
  int new_label = alg::kNoise;
  double objective_delta = 0.0;
};

struct ConsensusConfig {
  std::size_t max_sweeps = 50;
  double min_improvement = 1e-12;
};

struct ConsensusState {
  alg::Partition base;
  AmiTable initial_table;          // inputs only (Table shape)
  double objective = 0.0;          // average AMI of base vs inputs
  std::size_t sweep_count = 0;
  std::vector<MoveRecord> moves_log;
  std::vector<double> objective_trajectory;  // objective after each sweep

  nlohmann::json moves_to_jsonl() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : moves_log)
      arr.push_back({{"ip", m.ip.to_string()},
                     {"old_label", m.old_label},
                     {"new_label", m.new_label},
                     {"objective_delta", m.objective_delta}});
    return arr;
  }
};

/// Greedy average-AMI consensus over feature partitions, with the two
/// modifications that (1) new clusters may be created during a sweep and
/// (2) the heuristic grouping seeds the base labeling. Every IP is visited in
/// ascending address order; candidate labels are all existing base labels,
/// one fresh label and NOISE; the best strictly-improving candidate wins
/// (first in that order on ties). Sweeps repeat until a full pass applies no
/// move or max_sweeps is hit.
class ConsensusEngine {
public:
  ConsensusEngine(std::vector<alg::Partition> inputs, const alg::Partition& heuristic,
                  std::vector<IpAddr> universe, const ConsensusConfig& cfg = {})
      : inputs_(std::move(inputs)), cfg_(cfg) {
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    universe_ = std::move(universe);

    labels_.assign(universe_.size(), alg::kNoise);
    for (std::size_t i = 0; i < universe_.size(); ++i) {
      if (const auto l = heuristic.label_of(universe_[i])) labels_[i] = *l;
    }
    next_label_ = 0;
    for (int l : labels_) next_label_ = std::max(next_label_, l + 1);
    for (int l : labels_)
      if (l >= 0) ++label_sizes_[l];

    // one accumulator per input with >= 2 universe points
    for (const auto& input : inputs_) {
      if (input.universe.size() < 2) continue;
      std::vector<std::size_t> points;
      std::vector<int> in_labels;
      points.reserve(input.universe.size());
      for (std::size_t k = 0; k < input.universe.size(); ++k) {
        const auto it =
            std::lower_bound(universe_.begin(), universe_.end(), input.universe[k]);
        if (it == universe_.end() || !(*it == input.universe[k]))
          throw InvariantError("consensus universe must cover every input universe");
        points.push_back(static_cast<std::size_t>(it - universe_.begin()));
        in_labels.push_back(input.labels[k]);
      }
      accs_.emplace_back(in_labels);
      acc_points_.push_back(std::move(points));
    }
    if (accs_.empty()) throw ConfigError("consensus needs at least one usable input");

    // membership: which accumulators watch a given universe point
    member_of_.assign(universe_.size(), {});
    acc_pos_.assign(accs_.size(), std::map<std::size_t, std::size_t>{});
    for (std::size_t t = 0; t < accs_.size(); ++t) {
      std::vector<int> base_labels(acc_points_[t].size());
      for (std::size_t k = 0; k < acc_points_[t].size(); ++k) {
        const std::size_t p = acc_points_[t][k];
        base_labels[k] = labels_[p];
        member_of_[p].push_back(t);
        acc_pos_[t][p] = k;
      }
      accs_[t].reset_base(base_labels);
    }
  }

  double objective() const {
    double s = 0.0;
    for (const auto& acc : accs_) s += acc.ami();
    return s / static_cast<double>(accs_.size());
  }

  /// One pass over all IPs; returns the number of applied moves.
  std::size_t sweep(ConsensusState& state) {
    std::size_t changed = 0;
    for (std::size_t p = 0; p < universe_.size(); ++p) {
      if (member_of_[p].empty()) continue;
      const double current = objective();

      // candidate labels: existing (ascending), then fresh, then noise
      std::vector<int> candidates;
      for (const auto& [l, sz] : label_sizes_)
        if (sz > 0) candidates.push_back(l);
      candidates.push_back(kFresh);
      candidates.push_back(alg::kNoise);

      double best_obj = current;
      int best_candidate = kKeep;
      for (int cand : candidates) {
        if (cand == labels_[p]) continue;
        if (cand == kFresh && is_singleton_label(p)) continue;  // same structure
        if (cand == alg::kNoise && labels_[p] == alg::kNoise) continue;
        const double obj = evaluate(p, cand);
        if (obj > best_obj + cfg_.min_improvement) {
          best_obj = obj;
          best_candidate = cand;
        }
      }
      if (best_candidate == kKeep) continue;

      const int old_label = labels_[p];
      const int new_label = apply(p, best_candidate);
      const double after = verify_objective();
      if (after + 1e-9 < current)
        throw InvariantError("consensus objective decreased on an applied move");
      state.moves_log.push_back({universe_[p], old_label, new_label, after - current});
      ++changed;
    }
    return changed;
  }

  const std::vector<IpAddr>& universe() const { return universe_; }
  const std::vector<int>& labels() const { return labels_; }

private:
  static constexpr int kFresh = -1000000;
  static constexpr int kKeep = -1000001;

  bool is_singleton_label(std::size_t p) const {
    const int l = labels_[p];
    if (l < 0) return true;  // noise is already a singleton structurally
    return label_sizes_.at(l) == 1;
  }

  /// Objective if point p moved to `cand` (fresh and noise are both singleton
  /// rows for AMI purposes). Leaves the engine unchanged.
  double evaluate(std::size_t p, int cand) {
    double sum = 0.0;
    for (std::size_t t = 0; t < accs_.size(); ++t) sum += accs_[t].ami();
    for (const std::size_t t : member_of_[p]) {
      auto& acc = accs_[t];
      const std::size_t k = acc_pos_[t].at(p);
      const int from = acc.key_of(k);
      const int to = (cand >= 0) ? cand : detail::AmiAccumulator::noise_key(k);
      if (from == to) continue;
      sum -= acc.ami();
      acc.move(k, to);
      sum += acc.ami();
      acc.move(k, from);  // revert
    }
    return sum / static_cast<double>(accs_.size());
  }

  /// Applies the move for real; returns the concrete new base label.
  int apply(std::size_t p, int cand) {
    int new_label = cand;
    if (cand == kFresh) new_label = next_label_++;
    if (labels_[p] >= 0 && --label_sizes_[labels_[p]] == 0) label_sizes_.erase(labels_[p]);
    labels_[p] = new_label == alg::kNoise ? alg::kNoise : new_label;
    if (labels_[p] >= 0) ++label_sizes_[labels_[p]];

    for (const std::size_t t : member_of_[p]) {
      auto& acc = accs_[t];
      const std::size_t k = acc_pos_[t].at(p);
      const int to = labels_[p] >= 0 ? labels_[p] : detail::AmiAccumulator::noise_key(k);
      acc.move(k, to);
    }
    return labels_[p];
  }

  /// Full recompute of every accumulator, guarding against incremental drift.
  double verify_objective() {
    for (auto& acc : accs_) {
      const double inc = acc.ami();
      acc.recompute();
      if (std::abs(inc - acc.ami()) > 1e-9)
        throw InvariantError("consensus incremental AMI drifted from recomputed value");
    }
    return objective();
  }

  std::vector<alg::Partition> inputs_;
  ConsensusConfig cfg_;
  std::vector<IpAddr> universe_;
  std::vector<int> labels_;
  int next_label_ = 0;
  std::map<int, std::size_t> label_sizes_;

  std::vector<detail::AmiAccumulator> accs_;
  std::vector<std::vector<std::size_t>> acc_points_;
  std::vector<std::vector<std::size_t>> member_of_;
  std::vector<std::map<std::size_t, std::size_t>> acc_pos_;
};

struct ConsensusResult {
  alg::Partition final_partition;
  ConsensusState state;
};

/// Runs sweeps to a fixed point (or max_sweeps). The heuristic partition
/// seeds the base and stays in the input list (it votes and anchors).
inline ConsensusResult run_consensus(const std::vector<alg::Partition>& inputs,
                                     const alg::Partition& heuristic,
                                     std::vector<IpAddr> universe,
                                     const ConsensusConfig& cfg = {}) {
  ConsensusResult out;
  if (universe.empty()) {
    out.final_partition = alg::Partition({}, {}, "consensus");
    return out;
  }
  ConsensusEngine engine(inputs, heuristic, std::move(universe), cfg);
  out.state.initial_table = ami_table(inputs);
  out.state.objective = engine.objective();

  for (std::size_t s = 0; s < cfg.max_sweeps; ++s) {
    const std::size_t changed = engine.sweep(out.state);
    ++out.state.sweep_count;
    out.state.objective = engine.objective();
    out.state.objective_trajectory.push_back(out.state.objective);
    if (changed == 0) break;
  }

  out.final_partition = alg::Partition(engine.universe(), engine.labels(), "consensus");
  out.state.base = out.final_partition;
  return out;
}

}  // namespace honeyclust::consensus

#endif  // HONEYCLUST_CONSENSUS_CONSENSUS_HPP
