#include <catch2/catch_amalgamated.hpp>

#include "honeyclust/features/credlists.hpp"
#include "honeyclust/features/credshare.hpp"
#include "honeyclust/features/heuristic.hpp"
#include "honeyclust/features/intervals.hpp"
#include "honeyclust/features/outbound.hpp"
#include "honeyclust/features/sessions.hpp"

#include <functional>
#include <set>

using namespace honeyclust;
using namespace honeyclust::features;
using profile::Credential;
using profile::IpProfile;
using profile::ProfileMap;

namespace {

IpAddr ip(const std::string& s) { return IpAddr::parse(s).value(); }

IpProfile& add_profile(ProfileMap& m, const std::string& addr) {
  auto a = ip(addr);
  auto& p = m[a];
  p.ip = a;
  return p;
}

std::set<Credential> creds(int count, const std::string& salt) {
  std::set<Credential> out;
  for (int i = 0; i < count; ++i) out.insert({"user" + salt, "pw" + salt + std::to_string(i)});
  return out;
}

bool same_cluster(const alg::Partition& part, const std::string& a, const std::string& b) {
  const auto la = part.label_of(ip(a)), lb = part.label_of(ip(b));
  return la && lb && *la >= 0 && *la == *lb;
}

// exhaustive best-modularity partition over <= ~10 nodes via restricted
// growth strings
double best_modularity(std::size_t n,
                       const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                       std::vector<int>& best_labels) {
  std::vector<int> rgs(n, 0);
  double best = -1.0;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int maxl) {
    if (i == n) {
      const double q = alg::modularity_q(n, edges, rgs);
      if (q > best) {
        best = q;
        best_labels = rgs;
      }
      return;
    }
    for (int l = 0; l <= maxl + 1; ++l) {
      rgs[i] = l;
      rec(i + 1, std::max(maxl, l));
    }
  };
  rec(0, -1);
  return best;
}

}  // namespace

TEST_CASE("cluster_heuristic: identical credential sets at and below the threshold") {
  const auto shared6 = creds(6, "x");
  const auto shared4 = creds(4, "y");

  ProfileMap m;
  add_profile(m, "10.0.0.1").credential_set = shared6;
  add_profile(m, "10.0.0.2").credential_set = shared6;
  add_profile(m, "10.0.0.3").credential_set = shared4;
  add_profile(m, "10.0.0.4").credential_set = shared4;

  auto part = cluster_heuristic(m);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  // 4-credential sets stay below the >= 5 rule: not in the universe at all
  CHECK_FALSE(part.label_of(ip("10.0.0.3")).has_value());
  CHECK_FALSE(part.label_of(ip("10.0.0.4")).has_value());

  // exactly 5 connects
  ProfileMap m5;
  add_profile(m5, "10.0.1.1").credential_set = creds(5, "z");
  add_profile(m5, "10.0.1.2").credential_set = creds(5, "z");
  auto part5 = cluster_heuristic(m5);
  CHECK(same_cluster(part5, "10.0.1.1", "10.0.1.2"));
}

TEST_CASE("cluster_heuristic: transitivity across different criteria") {
  ProfileMap m;
  const auto shared = creds(6, "s");
  add_profile(m, "10.0.0.1").credential_set = shared;
  auto& b = add_profile(m, "10.0.0.2");
  b.credential_set = shared;
  b.outbound_domains.insert({"203.0.113.9", 4444});  // unusual port
  auto& c = add_profile(m, "10.0.0.3");
  c.outbound_domains.insert({"203.0.113.9", 4444});
  add_profile(m, "10.0.0.4");  // nothing shared

  auto part = cluster_heuristic(m);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  CHECK(same_cluster(part, "10.0.0.2", "10.0.0.3"));
  CHECK_FALSE(part.label_of(ip("10.0.0.4")).has_value());
}

TEST_CASE("cluster_heuristic: web-port outbound does not connect") {
  ProfileMap m;
  add_profile(m, "10.0.0.1").outbound_domains.insert({"example.com", 443});
  add_profile(m, "10.0.0.2").outbound_domains.insert({"example.com", 443});
  auto part = cluster_heuristic(m);
  CHECK(part.size() == 0);
}

TEST_CASE("cluster_heuristic: identical command sequences need length 5") {
  ProfileMap m;
  const std::vector<std::string> long_seq = {"cd", "rm", "wget", "chmod", "./a.sh"};
  const std::vector<std::string> short_seq = {"uname", "id"};
  add_profile(m, "10.0.0.1").command_sequences = {{"s1", long_seq}, {"s2", short_seq}};
  add_profile(m, "10.0.0.2").command_sequences = {{"s3", long_seq}};
  add_profile(m, "10.0.0.3").command_sequences = {{"s4", short_seq}};
  add_profile(m, "10.0.0.4").command_sequences = {{"s5", short_seq}};

  auto part = cluster_heuristic(m);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  CHECK_FALSE(part.label_of(ip("10.0.0.3")).has_value());
}

TEST_CASE("cluster_outbound: one common domain forms one cluster") {
  ProfileMap m;
  for (int i = 1; i <= 10; ++i)
    add_profile(m, "10.0.0." + std::to_string(i)).outbound_domains.insert({"api.example", 80});
  auto part = cluster_outbound(m, 2, 8, 1);
  CHECK(part.size() == 10);
  CHECK(part.n_clusters() == 1);
}

TEST_CASE("cluster_outbound: two disjoint domain groups form two clusters") {
  ProfileMap m;
  for (int i = 1; i <= 5; ++i)
    add_profile(m, "10.0.0." + std::to_string(i)).outbound_domains.insert({"alpha.example", 80});
  for (int i = 1; i <= 6; ++i)
    add_profile(m, "10.0.1." + std::to_string(i)).outbound_domains.insert({"beta.example", 443});
  auto part = cluster_outbound(m, 2, 8, 1);
  CHECK(part.n_clusters() == 2);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.5"));
  CHECK(same_cluster(part, "10.0.1.1", "10.0.1.6"));
  CHECK_FALSE(same_cluster(part, "10.0.0.1", "10.0.1.1"));
}

TEST_CASE("cluster_outbound: unique domain means singleton; no outbound means absent") {
  ProfileMap m;
  for (int i = 1; i <= 3; ++i)
    add_profile(m, "10.0.0." + std::to_string(i)).outbound_domains.insert({"shared.example", 80});
  add_profile(m, "10.0.0.9").outbound_domains.insert({"lonely.example", 80});
  add_profile(m, "10.0.0.10");  // no outbound at all

  auto part = cluster_outbound(m, 2, 8, 1);
  const auto solo = part.label_of(ip("10.0.0.9"));
  REQUIRE(solo.has_value());
  int members = 0;
  for (auto l : part.labels)
    if (l == *solo) ++members;
  CHECK(members == 1);
  CHECK_FALSE(part.label_of(ip("10.0.0.10")).has_value());
  CHECK(cluster_outbound({}, 2, 8, 1).size() == 0);
}

TEST_CASE("cluster_outbound: port is ignored for edges") {
  ProfileMap m;
  add_profile(m, "10.0.0.1").outbound_domains.insert({"x.example", 80});
  add_profile(m, "10.0.0.2").outbound_domains.insert({"x.example", 8080});
  auto part = cluster_outbound(m, 2, 8, 1);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
}

TEST_CASE("cluster_intervals: phase-shifted schedules co-cluster") {
  ProfileMap m;
  const Instant base = parse_rfc3339("2020-03-01T00:00:00Z").value();
  // three IPs on a 3600 s period, phase-shifted by 30/60 s; one IP on a
  // wildly different 1337 s schedule
  for (int k = 0; k < 3; ++k) {
    auto& p = add_profile(m, "10.0.0." + std::to_string(k + 1));
    for (int i = 0; i < 72; ++i)
      p.probe_timestamps.push_back(base + i * 3600 * kSecond + k * 30 * kSecond);
  }
  // a second cohort on an unrelated 1337 s schedule
  for (int k = 0; k < 3; ++k) {
    auto& odd = add_profile(m, "10.0.0." + std::to_string(k + 9));
    for (int i = 0; i < 190; ++i)
      odd.probe_timestamps.push_back(base + i * 1337 * kSecond + k * 10 * kSecond);
  }

  IntervalConfig cfg;
  cfg.window_length = 14 * kDay;
  cfg.bin_width = 60 * kSecond;
  cfg.dtw_band = 60;

  const auto ev = gather_interval_evidence(m, cfg);
  REQUIRE(ev.ips.size() == 6);
  // the three schedule-mates co-cluster in their single shared window
  const auto key01 = std::make_pair<std::size_t, std::size_t>(0, 1);
  REQUIRE(ev.shared.count(key01) == 1);
  CHECK(ev.shared.at(key01) == 1);
  CHECK(ev.co.count(key01) == 1);  // final distance 0 with one shared window

  auto part = cluster_intervals(m, cfg);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.3"));
  const auto odd_label = part.label_of(ip("10.0.0.9"));
  if (odd_label.has_value()) CHECK(*odd_label != *part.label_of(ip("10.0.0.1")));
}

TEST_CASE("cluster_intervals: co-clustered 3 of 4 windows gives distance 0.25") {
  ProfileMap m;
  const Instant base = parse_rfc3339("2020-03-01T00:00:00Z").value();
  IntervalConfig cfg;
  cfg.window_length = kDay;
  cfg.bin_width = 60 * kSecond;
  cfg.dtw_band = 30;

  // IPs .1-.4 probe hourly in all four windows. IP .5 probes with them in
  // windows 0-2 but defects to a 73-minute cohort (IPs .6-.9) in window 3,
  // where it lands in that cohort's cluster instead.
  for (int k = 1; k <= 5; ++k) {
    auto& p = add_profile(m, "10.0.0." + std::to_string(k));
    for (int w = 0; w < 4; ++w) {
      for (int i = 0; i < 24; ++i) {
        Instant t = base + w * kDay + i * kHour;
        if (k == 5 && w == 3) t = base + w * kDay + i * 73 * kMinute;
        if (t < base + (w + 1) * kDay) p.probe_timestamps.push_back(t);
      }
    }
    std::sort(p.probe_timestamps.begin(), p.probe_timestamps.end());
  }
  for (int k = 6; k <= 9; ++k) {
    auto& p = add_profile(m, "10.0.0." + std::to_string(k));
    for (int i = 0; i < 24; ++i) {
      const Instant t = base + 3 * kDay + i * 73 * kMinute;
      if (t < base + 4 * kDay) p.probe_timestamps.push_back(t);
    }
  }

  const auto ev = gather_interval_evidence(m, cfg);
  const auto key04 = std::make_pair<std::size_t, std::size_t>(0, 4);
  REQUIRE(ev.shared.count(key04) == 1);
  CHECK(ev.shared.at(key04) == 4);
  CHECK(ev.co.at(key04) == 3);
  const double final_distance =
      1.0 - static_cast<double>(ev.co.at(key04)) / static_cast<double>(ev.shared.at(key04));
  CHECK(final_distance == Catch::Approx(0.25));
}

TEST_CASE("cluster_intervals: single-probe IPs are excluded") {
  ProfileMap m;
  add_profile(m, "10.0.0.1").probe_timestamps = {0};
  auto& p2 = add_profile(m, "10.0.0.2");
  auto& p3 = add_profile(m, "10.0.0.3");
  for (int i = 0; i < 10; ++i) {
    p2.probe_timestamps.push_back(i * kHour);
    p3.probe_timestamps.push_back(i * kHour + kMinute);
  }
  auto part = cluster_intervals(m);
  CHECK_FALSE(part.label_of(ip("10.0.0.1")).has_value());
}

TEST_CASE("cluster_intervals is invariant to a global time shift") {
  ProfileMap m, shifted;
  const Instant base = parse_rfc3339("2020-03-01T00:00:00Z").value();
  for (int k = 1; k <= 4; ++k) {
    auto& p = add_profile(m, "10.0.0." + std::to_string(k));
    auto& q = add_profile(shifted, "10.0.0." + std::to_string(k));
    const int period = k <= 2 ? 3600 : 7200;
    for (int i = 0; i < 48; ++i) {
      const Instant t = base + i * period * kSecond + k * 11 * kSecond;
      p.probe_timestamps.push_back(t);
      q.probe_timestamps.push_back(t + 37 * kSecond);  // < bin width
    }
  }
  IntervalConfig cfg;
  cfg.window_length = 7 * kDay;
  auto a = cluster_intervals(m, cfg);
  auto b = cluster_intervals(shifted, cfg);
  REQUIRE(a.size() == b.size());
  CHECK(a.labels == b.labels);
}

TEST_CASE("capability sequence distance: identity and padding formula") {
  const std::size_t vocab = 12;
  std::vector<std::uint64_t> s = {0b1111, 0b0011, 0};
  CHECK(capability_sequence_distance(s, s, vocab) == 0.0);

  // sequence vs itself plus 2 extra positions of weight w=3 each:
  // distance = (2 * 3/12) / 5
  std::vector<std::uint64_t> longer = s;
  longer.push_back(0b0111);
  longer.push_back(0b1011);
  CHECK(capability_sequence_distance(s, longer, vocab) ==
        Catch::Approx((2.0 * 3.0 / 12.0) / 5.0));
  // symmetry
  CHECK(capability_sequence_distance(longer, s, vocab) ==
        capability_sequence_distance(s, longer, vocab));
}

TEST_CASE("cluster_sessions: discovery-script variants cluster together") {
  ProfileMap m;
  const auto& cm = profile::default_capability_map();
  auto embed = [&](std::vector<std::string> bins) {
    return profile::embed_session(bins, cm);
  };
  add_profile(m, "10.0.0.1").capability_sequences = {
      {"s1", embed({"cat", "echo", "ifconfig", "ip", "ls", "ps", "uname"})}};
  add_profile(m, "10.0.0.2").capability_sequences = {
      {"s2", embed({"cat", "ifconfig", "ip", "uname"})}};
  add_profile(m, "10.0.0.3").capability_sequences = {
      {"s3", embed({"cat", "ifconfig", "ip", "ps", "uname"})}};
  for (int i = 7; i <= 9; ++i)
    add_profile(m, "10.0.0." + std::to_string(i)).capability_sequences = {
        {"s" + std::to_string(i), embed({"wget", "curl", "chmod", "busybox", "tftp"})}};

  auto part = cluster_sessions(m, cm);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  CHECK(same_cluster(part, "10.0.0.2", "10.0.0.3"));
  CHECK(same_cluster(part, "10.0.0.7", "10.0.0.9"));
  CHECK_FALSE(same_cluster(part, "10.0.0.1", "10.0.0.8"));
}

TEST_CASE("cluster_sessions: IPs without command sessions are absent") {
  ProfileMap m;
  add_profile(m, "10.0.0.1");
  auto part = cluster_sessions(m);
  CHECK(part.size() == 0);
}

TEST_CASE("cluster_credlists: identical lists cluster at distance zero") {
  ProfileMap m;
  const auto shared = creds(20, "op");
  for (int i = 1; i <= 3; ++i) add_profile(m, "10.0.0." + std::to_string(i)).credential_set = shared;
  // heterogeneous background
  for (int i = 1; i <= 6; ++i)
    add_profile(m, "10.9.0." + std::to_string(i)).credential_set = creds(6, std::to_string(i));

  auto part = cluster_credlists(m);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  CHECK(same_cluster(part, "10.0.0.2", "10.0.0.3"));
  CHECK_FALSE(same_cluster(part, "10.0.0.1", "10.9.0.1"));
}

TEST_CASE("cluster_credlists: five shared plus one unique each (distance 2/7)") {
  ProfileMap m;
  const auto base = creds(5, "b");
  for (int i = 1; i <= 3; ++i) {
    auto s = base;
    s.insert({"solo", "pw" + std::to_string(i)});
    add_profile(m, "10.0.0." + std::to_string(i)).credential_set = s;
  }
  // distant background so the valley has walls
  for (int i = 1; i <= 6; ++i)
    add_profile(m, "10.9.0." + std::to_string(i)).credential_set = creds(8, "bg" + std::to_string(i));

  // check the arithmetic directly
  const auto& s1 = m.at(ip("10.0.0.1")).credential_set;
  const auto& s2 = m.at(ip("10.0.0.2")).credential_set;
  CHECK(alg::jaccard_distance(s1, s2) == Catch::Approx(2.0 / 7.0));

  auto part = cluster_credlists(m);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  CHECK(same_cluster(part, "10.0.0.2", "10.0.0.3"));
}

TEST_CASE("cluster_credlists: a one-credential IP never forms a spurious pair cluster") {
  ProfileMap m;
  add_profile(m, "10.0.0.1").credential_set = {{"root", "root"}};
  // heterogeneous others drawing from the common list
  const auto& common = profile::common_credentials();
  int i = 0;
  for (auto it = common.begin(); it != common.end() && i < 12; ++it, ++i) {
    auto& p = add_profile(m, "10.9.0." + std::to_string(i + 1));
    auto jt = it;
    for (int k = 0; k < 8 && jt != common.end(); ++k, ++jt) p.credential_set.insert(*jt);
  }
  auto part = cluster_credlists(m);
  const auto l = part.label_of(ip("10.0.0.1"));
  REQUIRE(l.has_value());
  if (*l >= 0) {
    int members = 0;
    for (auto lab : part.labels)
      if (lab == *l) ++members;
    CHECK(members >= 3);  // joins a real group or stays noise, never a pair
  }
}

TEST_CASE("cluster_credshare: discovery then first-try success forms one community") {
  ProfileMap m;
  auto& a = add_profile(m, "10.0.0.1");  // discoverer: failed first, succeeded later
  a.first_attempt_success = false;
  a.successful_credentials.insert({"svc", "Zx9!rare", 100 * kSecond});
  auto& b = add_profile(m, "10.0.0.2");  // first-try success afterwards
  b.first_attempt_success = true;
  b.successful_credentials.insert({"svc", "Zx9!rare", 200 * kSecond});

  auto part = cluster_credshare(m);
  REQUIRE(part.size() == 2);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
}

TEST_CASE("cluster_credshare: common credentials create no edges") {
  ProfileMap m;
  auto& a = add_profile(m, "10.0.0.1");
  a.successful_credentials.insert({"root", "123456", 100 * kSecond});
  auto& b = add_profile(m, "10.0.0.2");
  b.first_attempt_success = true;
  b.successful_credentials.insert({"root", "123456", 200 * kSecond});

  auto part = cluster_credshare(m);
  CHECK(part.size() == 0);
}

TEST_CASE("cluster_credshare: ordering matters (no edge to later successes)") {
  ProfileMap m;
  auto& a = add_profile(m, "10.0.0.1");
  a.successful_credentials.insert({"svc", "Zx9!rare", 300 * kSecond});  // later than B
  auto& b = add_profile(m, "10.0.0.2");
  b.first_attempt_success = true;
  b.successful_credentials.insert({"svc", "Zx9!rare", 200 * kSecond});
  auto part = cluster_credshare(m);
  CHECK(part.size() == 0);
}

TEST_CASE("cluster_credshare: two sharing groups plus a spurious cross edge") {
  ProfileMap m;
  auto add = [&](const std::string& addr, bool first_try, const char* u, const char* pw,
                 Instant ts) -> IpProfile& {
    auto& p = add_profile(m, addr);
    p.first_attempt_success = first_try;
    p.successful_credentials.insert({u, pw, ts});
    return p;
  };
  // group 1 on credential c1: A1 discovers, B1 and B2 first-try later
  add("10.0.0.1", false, "svc", "c1-rare", 100 * kSecond);
  add("10.0.0.2", true, "svc", "c1-rare", 200 * kSecond);
  add("10.0.0.3", true, "svc", "c1-rare", 300 * kSecond);
  // group 2 on credential c2: A2 discovers, B3 and B4 first-try later
  add("10.0.1.1", false, "ops", "c2-rare", 150 * kSecond);
  auto& b3 = add("10.0.1.2", true, "ops", "c2-rare", 250 * kSecond);
  add("10.0.1.3", true, "ops", "c2-rare", 350 * kSecond);
  // spurious cross edge: B3 also stumbles on c1 before B2's first-try login
  b3.successful_credentials.insert({"svc", "c1-rare", 270 * kSecond});

  auto part = cluster_credshare(m);
  REQUIRE(part.size() == 6);
  CHECK(part.n_clusters() == 2);
  CHECK(same_cluster(part, "10.0.0.1", "10.0.0.2"));
  CHECK(same_cluster(part, "10.0.0.2", "10.0.0.3"));
  CHECK(same_cluster(part, "10.0.1.1", "10.0.1.2"));
  CHECK(same_cluster(part, "10.0.1.2", "10.0.1.3"));
  CHECK_FALSE(same_cluster(part, "10.0.0.1", "10.0.1.1"));

  // exhaustive oracle: two triangles plus one bridge
  std::map<IpAddr, std::size_t> index;
  for (std::size_t i = 0; i < part.universe.size(); ++i) index[part.universe[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> edges = {
      {index[ip("10.0.0.1")], index[ip("10.0.0.2")]},
      {index[ip("10.0.0.1")], index[ip("10.0.0.3")]},
      {index[ip("10.0.0.2")], index[ip("10.0.0.3")]},
      {index[ip("10.0.1.1")], index[ip("10.0.1.2")]},
      {index[ip("10.0.1.1")], index[ip("10.0.1.3")]},
      {index[ip("10.0.1.2")], index[ip("10.0.1.3")]},
      {index[ip("10.0.0.3")], index[ip("10.0.1.2")]},  // cross B2-B3
  };
  std::vector<int> oracle_labels;
  const double best_q = best_modularity(6, edges, oracle_labels);
  const auto got = alg::greedy_modularity(6, edges);
  CHECK(got.modularity_q == Catch::Approx(best_q).margin(1e-12));
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      CHECK((got.labels[i] == got.labels[j]) == (oracle_labels[i] == oracle_labels[j]));
}

TEST_CASE("feature partitions never place an IP in two clusters") {
  // construction guarantees it; sanity-check label vector lengths
  ProfileMap m;
  const auto shared = creds(6, "q");
  for (int i = 1; i <= 4; ++i) add_profile(m, "10.0.0." + std::to_string(i)).credential_set = shared;
  auto part = cluster_heuristic(m);
  CHECK(part.universe.size() == part.labels.size());
  std::set<IpAddr> seen(part.universe.begin(), part.universe.end());
  CHECK(seen.size() == part.universe.size());
}
