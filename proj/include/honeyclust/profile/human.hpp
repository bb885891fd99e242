// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_PROFILE_HUMAN_HPP
#define HONEYCLUST_PROFILE_HUMAN_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <vector>

#include "honeyclust/core/errors.hpp"
#include "honeyclust/ingest/session.hpp"

namespace honeyclust::profile {

struct HumanFlagConfig {
  double max_delta_threshold = 0.1;  // seconds
  double outlier_iqr_multiplier = 1.5;
};

enum class HumanRule { backspace, outlier, threshold };

struct HumanVerdict {
  bool is_human = false;
  std::set<HumanRule> rules_fired;
  bool timing_evaluable = false;  // rules 2 and 3 need at least two keystrokes
};

/// Largest gap between consecutive keystrokes, in seconds.
inline std::optional<double> max_keystroke_delta(const ingest::SessionRecord& s) {
  if (s.keystrokes.size() < 2) return std::nullopt;
  Duration best = 0;
  for (std::size_t i = 1; i < s.keystrokes.size(); ++i)
    best = std::max(best, s.keystrokes[i].timestamp - s.keystrokes[i - 1].timestamp);
  return duration_to_seconds(best);
}

/// Quantile with linear interpolation between closest ranks.
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw DataError("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  const double h = (static_cast<double>(xs.size()) - 1.0) * q;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= xs.size()) return xs.back();
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[lo + 1] - xs[lo]);
}

/// Tukey fence Q3 + mult * IQR over the per-session maxima.
inline double outlier_fence(const std::vector<double>& all_session_max_deltas, double mult) {
  const double q1 = quantile(all_session_max_deltas, 0.25);
  const double q3 = quantile(all_session_max_deltas, 0.75);
  return q3 + mult * (q3 - q1);
}

/// Three-rule human detector over keystroke timing:
///  1. a backspace/delete key occurs,
///  2. the session's max inter-key delta is a Tukey outlier across sessions,
///  3. the max delta exceeds the fixed threshold (default 0.1 s, strict).
/// With fewer than two keystrokes rules 2-3 are not evaluable; rule 1 still
/// applies to whatever keys exist.
inline HumanVerdict flag_human(const ingest::SessionRecord& session,
                               const std::vector<double>& all_session_max_deltas,
                               const HumanFlagConfig& cfg = {}) {
  if (cfg.max_delta_threshold <= 0) throw ConfigError("human flag threshold must be > 0");
  HumanVerdict v;
  for (const auto& k : session.keystrokes) {
    if (k.cls == ingest::KeyClass::erase) {
      v.rules_fired.insert(HumanRule::backspace);
      break;
    }
  }
  const auto delta = max_keystroke_delta(session);
  if (delta) {
    v.timing_evaluable = true;
    if (!all_session_max_deltas.empty() &&
        *delta > outlier_fence(all_session_max_deltas, cfg.outlier_iqr_multiplier))
      v.rules_fired.insert(HumanRule::outlier);
    if (*delta > cfg.max_delta_threshold) v.rules_fired.insert(HumanRule::threshold);
  }
  v.is_human = !v.rules_fired.empty();
  return v;
}

}  // namespace honeyclust::profile

#endif  // HONEYCLUST_PROFILE_HUMAN_HPP
