// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_SYNTH_GENERATOR_HPP
#define HONEYCLUST_SYNTH_GENERATOR_HPP

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "honeyclust/alg/partition.hpp"
#include "honeyclust/core/errors.hpp"
#include "honeyclust/core/ip.hpp"
#include "honeyclust/core/rng.hpp"
#include "honeyclust/core/time.hpp"
#include "honeyclust/profile/common_credentials.hpp"

namespace honeyclust::synth {

/// One synthetic campaign archetype with a ground-truth operator identity.
struct OperatorSpec {
  std::string operator_id;
  std::size_t n_ips = 1;
  std::vector<profile::Credential> credential_list;  // attempted in order, wrapping
  double scan_period_s = 3600.0;
  double jitter = 0.1;  // fraction of the period, in [0, 1)
  std::vector<std::string> script;  // raw command lines, one event each
  std::vector<std::pair<std::string, int>> outbound_targets;
  bool share_credentials = false;
  double human_fraction = 0.0;  // of script sessions, with human-paced keys
  Instant active_start = 0;
  Instant active_end = 0;
  std::size_t creds_per_session = 2;
  std::size_t script_runs = 2;  // sessions that log in and run the script
};

struct NoiseSpec {
  double churn_rate = 0.0;      // fraction of an operator's IPs replaced per window
  Duration churn_window = 7 * kDay;
  std::size_t nat_overlap = 0;  // IPs shared between the first two operators
  std::size_t background_ips = 0;
  std::uint64_t rng_seed = 1;
};

struct Campaign {
  std::vector<std::string> log_lines;  // time-ordered Cowrie JSON lines
  alg::Partition ground_truth;         // operator labels over non-background IPs
  std::vector<IpAddr> nat_ips;         // shared between operators 0 and 1
  std::vector<IpAddr> background;      // unaffiliated one-shot scanners
  std::string region;
};

namespace detail {

struct Event {
  Instant ts;
  std::uint64_t session_no;
  int seq;
  nlohmann::json body;
};

class Emitter {
public:
  Emitter(const std::string& region, Rng& rng) : region_(region), rng_(rng) {}

  std::string new_session() {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "s%010llu",
                  static_cast<unsigned long long>(++session_counter_));
    current_seq_ = 0;
    return buf;
  }

  void push(const std::string& session, const IpAddr& ip, Instant ts, const char* eventid,
            std::initializer_list<std::pair<const char*, nlohmann::json>> extra = {}) {
    nlohmann::json j;
    j["eventid"] = eventid;
    j["session"] = session;
    j["src_ip"] = ip.to_string();
    j["timestamp"] = format_rfc3339(ts);
    j["sensor"] = region_;
    for (const auto& [k, v] : extra) j[k] = v;
    events_.push_back({ts, session_counter_, current_seq_++, std::move(j)});
  }

  std::string session_hassh() {
    // two predominant client stacks plus a long tail
    static const char* pool[2] = {"ec7378c1a92f5a8dde7e8b7a1ddf33d1",
                                  "06046964c022c6407d15a27b12a6a4fb"};
    if (rng_.chance(0.85)) return pool[rng_.below(2)];
    std::string h;
    h.reserve(32);
    for (int i = 0; i < 32; ++i) h += "0123456789abcdef"[rng_.below(16)];
    return h;
  }

  std::vector<std::string> finish() {
    std::sort(events_.begin(), events_.end(), [](const Event& a, const Event& b) {
      if (a.ts != b.ts) return a.ts < b.ts;
      if (a.session_no != b.session_no) return a.session_no < b.session_no;
      return a.seq < b.seq;
    });
    std::vector<std::string> lines;
    lines.reserve(events_.size());
    for (const auto& e : events_) lines.push_back(e.body.dump());
    return lines;
  }

private:
  std::string region_;
  Rng& rng_;
  std::uint64_t session_counter_ = 0;
  int current_seq_ = 0;
  std::vector<Event> events_;
};

inline IpAddr make_ip(int block, std::size_t k) {
  if (k >= 250u * 250u) throw ConfigError("synth: too many IPs requested");
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%d.%zu.%zu", block, k / 250, k % 250 + 1);
  return IpAddr::parse(std::string("10.") + buf).value();
}

inline IpAddr make_background_ip(std::size_t k) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "172.16.%zu.%zu", k / 250, k % 250 + 1);
  return IpAddr::parse(buf).value();
}

inline IpAddr make_nat_ip(std::size_t k) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "192.0.2.%zu", k + 1);
  return IpAddr::parse(buf).value();
}

/// Emits one probe session. `success_cred` logs in (after the listed failed
/// attempts); commands/outbound follow a successful login only.
struct SessionPlan {
  IpAddr ip;
  Instant start;
  std::vector<profile::Credential> failures;
  std::optional<profile::Credential> success_cred;
  const std::vector<std::string>* script = nullptr;
  const std::vector<std::pair<std::string, int>>* outbound = nullptr;
  bool human = false;
  bool emit_tty = true;
};

inline void emit_session(Emitter& em, Rng& rng, const SessionPlan& plan) {
  const auto session = em.new_session();
  Instant t = plan.start;
  em.push(session, plan.ip, t, "cowrie.session.connect");
  em.push(session, plan.ip, t, "cowrie.client.kex", {{"hassh", em.session_hassh()}});
  t += kSecond + static_cast<Duration>(rng.below(2'000'000));
  for (const auto& [u, p] : plan.failures) {
    em.push(session, plan.ip, t, "cowrie.login.failed", {{"username", u}, {"password", p}});
    t += kSecond + static_cast<Duration>(rng.below(1'500'000));
  }
  if (plan.success_cred) {
    em.push(session, plan.ip, t, "cowrie.login.success",
            {{"username", plan.success_cred->first}, {"password", plan.success_cred->second}});
    t += kSecond;
    if (plan.script) {
      for (const auto& line : *plan.script) {
        t += plan.human ? seconds_to_duration(rng.uniform(1.5, 6.0))
                        : seconds_to_duration(rng.uniform(0.3, 1.2));
        em.push(session, plan.ip, t, "cowrie.command.input", {{"input", line}});
        if (plan.emit_tty) {
          // per-key timing: humans pause beyond 0.1 s and hit backspace
          Instant kt = t;
          const int keys = 4 + static_cast<int>(rng.below(6));
          for (int k = 0; k < keys; ++k) {
            kt += plan.human ? seconds_to_duration(rng.uniform(0.12, 0.8))
                             : seconds_to_duration(rng.uniform(0.002, 0.03));
            const bool erase = plan.human && rng.chance(0.15);
            em.push(session, plan.ip, kt, "cowrie.ttylog",
                    {{"class", erase ? "erase" : "printable"}});
          }
          t = kt;
        }
      }
    }
    if (plan.outbound) {
      for (const auto& [host, port] : *plan.outbound) {
        t += kSecond;
        em.push(session, plan.ip, t, "cowrie.direct-tcpip.request",
                {{"dst_ip", host}, {"dst_port", port}});
      }
    }
  }
  em.push(session, plan.ip, t + kSecond, "cowrie.session.closed");
}

}  // namespace detail

/// Generates a full campaign: every operator IP probes on its period with
/// jitter, walks its credential list, logs in on its scripted sessions, runs
/// the script and issues outbound requests. Credential-sharing operators
/// produce the discovery-then-first-try pattern. Fully deterministic for a
/// given seed.
inline Campaign generate_campaign(const std::vector<OperatorSpec>& specs,
                                  const NoiseSpec& noise,
                                  const std::string& region = "lab") {
  std::set<std::string> ids;
  for (const auto& op : specs) {
    if (!ids.insert(op.operator_id).second)
      throw ConfigError("synth: duplicate operator_id " + op.operator_id);
    if (op.n_ips < 1) throw ConfigError("synth: n_ips must be >= 1");
    if (!(op.jitter >= 0.0 && op.jitter < 1.0)) throw ConfigError("synth: jitter in [0,1)");
    if (op.scan_period_s <= 0) throw ConfigError("synth: period must be > 0");
    if (op.active_end <= op.active_start) throw ConfigError("synth: empty active window");
  }
  if (noise.nat_overlap > 0 && specs.size() < 2)
    throw ConfigError("synth: nat_overlap needs at least two operators");

  Rng rng(noise.rng_seed);
  Campaign camp;
  camp.region = region;
  detail::Emitter em(region, rng);

  // ---- IP rosters (with churn replacements) and ground truth ----
  struct ActiveIp {
    IpAddr ip;
    Instant from, to;
  };
  std::vector<std::vector<ActiveIp>> rosters(specs.size());
  std::vector<IpAddr> truth_ips;
  std::vector<int> truth_labels;
  std::set<IpAddr> assigned;

  for (std::size_t o = 0; o < specs.size(); ++o) {
    const auto& op = specs[o];
    std::size_t next_k = 0;
    auto allocate = [&](Instant from, Instant to) {
      const auto ip = detail::make_ip(static_cast<int>(o) + 1, next_k++);
      if (!assigned.insert(ip).second)
        throw InvariantError("synth: conflicting IP assignment " + ip.to_string());
      rosters[o].push_back({ip, from, to});
      truth_ips.push_back(ip);
      truth_labels.push_back(static_cast<int>(o));
    };

    if (noise.churn_rate <= 0.0) {
      for (std::size_t k = 0; k < op.n_ips; ++k) allocate(op.active_start, op.active_end);
    } else {
      // windows tile the operator's active range; each boundary retires a
      // fraction of the fleet and replaces it
      std::vector<std::size_t> active;
      for (std::size_t k = 0; k < op.n_ips; ++k) {
        allocate(op.active_start, op.active_end);
        active.push_back(rosters[o].size() - 1);
      }
      const std::size_t churn_per_window = static_cast<std::size_t>(
          std::max(1.0, noise.churn_rate * static_cast<double>(op.n_ips)));
      for (Instant boundary = op.active_start + noise.churn_window;
           boundary < op.active_end; boundary += noise.churn_window) {
        for (std::size_t c = 0; c < churn_per_window && !active.empty(); ++c) {
          const std::size_t pick = rng.below(active.size());
          rosters[o][active[pick]].to = boundary;
          active.erase(active.begin() + static_cast<long>(pick));
          allocate(boundary, op.active_end);
          active.push_back(rosters[o].size() - 1);
        }
      }
    }
  }

  // NAT overlap: IPs exhibiting the behavior of both operator 0 and 1
  for (std::size_t k = 0; k < noise.nat_overlap; ++k) {
    const auto ip = detail::make_nat_ip(k);
    camp.nat_ips.push_back(ip);
    for (std::size_t o = 0; o < 2; ++o)
      rosters[o].push_back({ip, specs[o].active_start, specs[o].active_end});
    truth_ips.push_back(ip);
    truth_labels.push_back(0);  // ground truth assigns the first operator
  }

  // ---- per-operator traffic ----
  for (std::size_t o = 0; o < specs.size(); ++o) {
    const auto& op = specs[o];
    const Duration period = seconds_to_duration(op.scan_period_s);

    // sharing operators: the first roster IP discovers, the rest first-try
    const bool sharing = op.share_credentials && !op.credential_list.empty();
    const profile::Credential shared_cred =
        sharing ? op.credential_list.front() : profile::Credential{};
    Instant discovery_time = 0;

    for (std::size_t r = 0; r < rosters[o].size(); ++r) {
      const auto& slot = rosters[o][r];
      Rng ip_rng = rng.fork(r * 1000 + o);

      const bool is_discoverer = sharing && r == 0;
      const bool is_sharer = sharing && r > 0;

      // scripted success ordinals within this IP's session stream
      std::set<std::size_t> success_sessions;
      if (is_discoverer || is_sharer) {
        success_sessions.insert(0);
      } else {
        for (std::size_t s = 0; s < op.script_runs; ++s)
          success_sessions.insert(1 + ip_rng.below(6));
      }

      Instant t = slot.from + seconds_to_duration(ip_rng.uniform(0.0, op.scan_period_s));
      if (is_sharer) {
        // first attempt must come after the discovery
        if (discovery_time == 0) throw InvariantError("synth: sharer before discovery");
        t = std::max(t, discovery_time + seconds_to_duration(ip_rng.uniform(60.0, 1200.0)));
      }
      std::size_t cred_cursor = is_sharer ? 1 : 0;
      std::size_t session_no = 0;

      while (t < slot.to) {
        detail::SessionPlan plan;
        plan.ip = slot.ip;
        plan.start = t;
        plan.emit_tty = ip_rng.chance(0.7);

        const bool success = success_sessions.count(session_no) > 0;
        if (success) {
          if (is_discoverer) {
            // a couple of random failures, then the shared credential lands
            for (std::size_t a = 0; a + 1 < std::max<std::size_t>(2, op.creds_per_session);
                 ++a) {
              if (op.credential_list.size() > 1) {
                plan.failures.push_back(
                    op.credential_list[1 + cred_cursor % (op.credential_list.size() - 1)]);
                ++cred_cursor;
              }
            }
            plan.success_cred = shared_cred;
            discovery_time = t;
          } else if (is_sharer) {
            plan.success_cred = shared_cred;  // first try, no failures
          } else {
            for (std::size_t a = 0; a + 1 < op.creds_per_session; ++a) {
              plan.failures.push_back(
                  op.credential_list[cred_cursor % op.credential_list.size()]);
              ++cred_cursor;
            }
            plan.success_cred = op.credential_list[cred_cursor % op.credential_list.size()];
            ++cred_cursor;
          }
          plan.script = &op.script;
          plan.outbound = &op.outbound_targets;
          plan.human = ip_rng.chance(op.human_fraction);
        } else {
          for (std::size_t a = 0; a < op.creds_per_session; ++a) {
            plan.failures.push_back(
                op.credential_list[cred_cursor % op.credential_list.size()]);
            ++cred_cursor;
          }
        }
        detail::emit_session(em, ip_rng, plan);
        ++session_no;
        t += static_cast<Duration>(static_cast<double>(period) *
                                   (1.0 + op.jitter * ip_rng.uniform(-1.0, 1.0)));
      }
    }
  }

  // ---- background one-shot scanners ----
  Instant global_start = specs.empty() ? 0 : specs.front().active_start;
  Instant global_end = specs.empty() ? kDay : specs.front().active_end;
  for (const auto& op : specs) {
    global_start = std::min(global_start, op.active_start);
    global_end = std::max(global_end, op.active_end);
  }
  const auto& common = profile::common_credentials();
  std::vector<profile::Credential> common_vec(common.begin(), common.end());
  for (std::size_t k = 0; k < noise.background_ips; ++k) {
    const auto ip = detail::make_background_ip(k);
    camp.background.push_back(ip);
    Rng bg_rng = rng.fork(900000 + k);
    detail::SessionPlan plan;
    plan.ip = ip;
    plan.start = global_start + static_cast<Duration>(
                                    bg_rng.below(static_cast<std::uint64_t>(
                                        std::max<Instant>(1, global_end - global_start))));
    const std::size_t attempts = 1 + bg_rng.below(4);
    for (std::size_t a = 0; a < attempts; ++a)
      plan.failures.push_back(bg_rng.pick(common_vec));
    plan.emit_tty = false;
    detail::emit_session(em, bg_rng, plan);
  }

  camp.log_lines = em.finish();
  camp.ground_truth = alg::Partition(std::move(truth_ips), std::move(truth_labels), "truth");
  return camp;
}

}  // namespace honeyclust::synth

#endif  // HONEYCLUST_SYNTH_GENERATOR_HPP
