#include <catch2/catch_amalgamated.hpp>

#include "honeyclust/alg/ami.hpp"
#include "honeyclust/alg/components.hpp"
#include "honeyclust/alg/dtw.hpp"
#include "honeyclust/alg/jaccard.hpp"
#include "honeyclust/alg/modularity.hpp"
#include "honeyclust/alg/optics.hpp"
#include "honeyclust/core/rng.hpp"

#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <vector>

using namespace honeyclust;
using namespace honeyclust::alg;

namespace {

// ---- independent oracles (no shared code with the implementations) ----

// Reachability closure by BFS.
std::vector<int> bfs_components(std::size_t n,
                                const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::deque<std::size_t> q{s};
    label[s] = next;
    while (!q.empty()) {
      auto u = q.front();
      q.pop_front();
      for (auto v : adj[u]) {
        if (label[v] < 0) {
          label[v] = next;
          q.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

// Full-matrix DTW with explicit 2-D table.
double dtw_reference(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size(), m = b.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n + 1, std::vector<double>(m + 1, inf));
  d[0][0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const double c = std::abs(a[i - 1] - b[j - 1]);
      d[i][j] = c + std::min(std::min(d[i - 1][j - 1], d[i - 1][j]), d[i][j - 1]);
    }
  }
  return d[n][m];
}

// AMI reference: contingency + hypergeometric expectation, computed with
// long double factorial ratios (valid for n <= ~60).
double ami_reference(const std::vector<int>& u, const std::vector<int>& v) {
  const std::size_t n = u.size();
  // noise -> singleton clusters
  auto densify = [](std::vector<int> in) {
    int next = 0;
    std::map<int, int> seen;
    for (auto& x : in) {
      if (x < 0) {
        x = 1'000'000 + next++;  // unique
      }
    }
    for (auto& x : in) {
      if (!seen.count(x)) seen[x] = static_cast<int>(seen.size());
      x = seen[x];
    }
    return in;
  };
  auto a = densify(u);
  auto b = densify(v);
  std::map<int, std::size_t> ca, cb;
  std::map<std::pair<int, int>, std::size_t> joint;
  for (std::size_t i = 0; i < n; ++i) {
    ca[a[i]]++;
    cb[b[i]]++;
    joint[{a[i], b[i]}]++;
  }
  const long double N = static_cast<long double>(n);
  long double mi = 0.0L;
  for (auto& [cell, c] : joint) {
    const long double nij = c, ai = ca[cell.first], bj = cb[cell.second];
    mi += (nij / N) * std::log(N * nij / (ai * bj));
  }
  std::vector<long double> fact(n + 1, 1.0L);
  for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  long double emi = 0.0L;
  for (auto& [la, av] : ca) {
    for (auto& [lb, bv] : cb) {
      const std::size_t lo = av + bv > n ? av + bv - n : 1;
      const std::size_t hi = std::min(av, bv);
      for (std::size_t nij = lo; nij <= hi; ++nij) {
        const long double p = fact[av] * fact[bv] * fact[n - av] * fact[n - bv] /
                              (fact[n] * fact[nij] * fact[av - nij] * fact[bv - nij] *
                               fact[n - av - bv + nij]);
        emi += (static_cast<long double>(nij) / N) *
               std::log(N * nij / (static_cast<long double>(av) * bv)) * p;
      }
    }
  }
  long double h1 = 0.0L, h2 = 0.0L;
  for (auto& [l, c] : ca) h1 -= (static_cast<long double>(c) / N) * std::log(c / N);
  for (auto& [l, c] : cb) h2 -= (static_cast<long double>(c) / N) * std::log(c / N);
  const long double denom = 0.5L * (h1 + h2) - emi;
  if (std::abs(static_cast<double>(denom)) < 1e-15) return 1.0;
  return static_cast<double>((mi - emi) / denom);
}

DistanceMatrix matrix_from(const std::vector<std::vector<double>>& m) {
  DistanceMatrix dm(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) dm.set(i, j, m[i][j]);
  return dm;
}

}  // namespace

TEST_CASE("connected components: fixtures") {
  // edges {a-b, b-c}, node d -> {a,b,c},{d}
  auto labels = connected_components(4, {{0, 1}, {1, 2}});
  CHECK(labels[0] == labels[1]);
  CHECK(labels[1] == labels[2]);
  CHECK(labels[3] != labels[0]);

  // no edges -> n singletons
  auto singl = connected_components(5, {});
  std::set<int> uniq(singl.begin(), singl.end());
  CHECK(uniq.size() == 5);
}

TEST_CASE("connected components match BFS closure on random graphs") {
  Rng rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(40);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    const std::size_t ne = rng.below(2 * n);
    for (std::size_t e = 0; e < ne; ++e)
      edges.emplace_back(rng.below(n), rng.below(n));
    auto got = connected_components(n, edges);
    auto want = bfs_components(n, edges);
    // same partition up to relabeling: compare co-membership
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        CHECK((got[i] == got[j]) == (want[i] == want[j]));
  }
}

TEST_CASE("dtw: identities and hand-checked cases") {
  CHECK(dtw({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(dtw({0, 0, 1}, {0, 1, 1}) == 0.0);  // warping absorbs the step
  CHECK(dtw({0}, {5}) == 5.0);
  CHECK(dtw({1, 2}, {1, 2}, kUnbounded) == 0.0);
  CHECK_THROWS_AS(dtw({1, 2, 3, 4, 5}, {1}, 1), DataError);  // band < length diff
  CHECK_THROWS_AS(dtw(std::vector<double>{}, {1.0}), DataError);
}

TEST_CASE("dtw matches brute-force reference on random pairs") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng.below(30), m = 1 + rng.below(30);
    std::vector<double> a(n), b(m);
    for (auto& x : a) x = static_cast<double>(rng.below(11));
    for (auto& x : b) x = static_cast<double>(rng.below(11));
    const double want = dtw_reference(a, b);
    CHECK(dtw(a, b) == want);
    // a generous band must agree with the full matrix
    CHECK(dtw(a, b, std::max(n, m)) == want);
    // symmetry
    CHECK(dtw(b, a) == want);
  }
}

TEST_CASE("dtw never beats identity alignment on equal lengths") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng.below(20);
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = rng.uniform(0, 10);
    for (auto& x : b) x = rng.uniform(0, 10);
    double l1 = 0;
    for (std::size_t i = 0; i < n; ++i) l1 += std::abs(a[i] - b[i]);
    CHECK(dtw(a, b) <= l1 + 1e-12);
  }
}

TEST_CASE("jaccard distance") {
  std::set<int> s1{1, 2, 3}, s2{2, 3, 4}, s3{7, 8};
  CHECK(jaccard_distance(s1, s1) == 0.0);
  CHECK(jaccard_distance(s1, s3) == 1.0);
  CHECK(jaccard_distance(s1, s2) == 0.5);
  CHECK(jaccard_distance(std::set<int>{}, std::set<int>{}) == 0.0);
}

TEST_CASE("jaccard satisfies the triangle inequality") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    auto mkset = [&] {
      std::set<int> s;
      const std::size_t k = rng.below(8);
      for (std::size_t i = 0; i < k; ++i) s.insert(static_cast<int>(rng.below(10)));
      return s;
    };
    auto a = mkset(), b = mkset(), c = mkset();
    const double ab = jaccard_distance(a, b), bc = jaccard_distance(b, c),
                 ac = jaccard_distance(a, c);
    CHECK(ac <= ab + bc + 1e-12);
  }
}

TEST_CASE("greedy modularity: fixtures and oracle") {
  // two 4-cliques joined by one edge -> 2 communities
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      edges.emplace_back(i, j);
      edges.emplace_back(i + 4, j + 4);
    }
  edges.emplace_back(3, 4);
  auto res = greedy_modularity(8, edges);
  std::set<int> uniq(res.labels.begin(), res.labels.end());
  CHECK(uniq.size() == 2);
  CHECK(res.labels[0] == res.labels[3]);
  CHECK(res.labels[4] == res.labels[7]);
  CHECK(res.labels[0] != res.labels[4]);

  // exhaustive 2-partition oracle: the bridge split is the best 2-partition
  double best_two = -1.0;
  std::vector<int> best_lab;
  for (unsigned mask = 1; mask < 127; ++mask) {  // nontrivial bipartitions of 8 nodes (node 7 fixed)
    std::vector<int> lab(8, 0);
    for (std::size_t i = 0; i < 7; ++i) lab[i] = (mask >> i) & 1;
    lab[7] = 1;
    const double q = modularity_q(8, edges, lab);
    if (q > best_two) {
      best_two = q;
      best_lab = lab;
    }
  }
  CHECK(res.modularity_q == Catch::Approx(best_two).margin(1e-12));
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j)
      CHECK((res.labels[i] == res.labels[j]) == (best_lab[i] == best_lab[j]));
}

TEST_CASE("greedy modularity: edge cases") {
  // single edge -> one community of {a,b}, Q from the definition: 1/1 - 1 = 0
  auto res = greedy_modularity(2, {{0, 1}});
  CHECK(res.labels[0] == res.labels[1]);
  CHECK(res.modularity_q == Catch::Approx(0.0).margin(1e-12));

  // edgeless graph -> all singletons, Q = 0 by convention
  auto empty = greedy_modularity(4, {});
  std::set<int> uniq(empty.labels.begin(), empty.labels.end());
  CHECK(uniq.size() == 4);
  CHECK(empty.modularity_q == 0.0);

  auto none = greedy_modularity(0, {});
  CHECK(none.labels.empty());
}

TEST_CASE("greedy modularity Q equals recomputed Q on random graphs") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng.below(20);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t e = 0; e < n + rng.below(n); ++e)
      edges.emplace_back(rng.below(n), rng.below(n));
    auto res = greedy_modularity(n, edges);
    CHECK(res.modularity_q ==
          Catch::Approx(modularity_q(n, edges, res.labels)).margin(1e-12));
  }
}

TEST_CASE("ami: identities") {
  std::vector<int> p{0, 0, 1, 1, 2};
  CHECK(ami_labels(p, p) == Catch::Approx(1.0).margin(1e-12));
  std::vector<int> permuted{2, 2, 0, 0, 1};  // same partition, relabeled
  CHECK(ami_labels(p, permuted) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("ami: 4-point cross case matches reference") {
  std::vector<int> p1{0, 0, 1, 1};  // {a,b | c,d}
  std::vector<int> p2{0, 1, 0, 1};  // {a,c | b,d}
  CHECK(ami_labels(p1, p2) == Catch::Approx(ami_reference(p1, p2)).margin(1e-10));
}

TEST_CASE("ami matches independent reference on random partitions") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.below(49);
    const int k1 = 1 + static_cast<int>(rng.below(6));
    const int k2 = 1 + static_cast<int>(rng.below(6));
    std::vector<int> a(n), b(n);
    for (auto& x : a) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(k1)));
    for (auto& x : b) x = static_cast<int>(rng.below(static_cast<std::uint64_t>(k2)));
    // sprinkle noise labels to exercise singleton conversion
    for (auto& x : a)
      if (rng.chance(0.1)) x = -1;
    for (auto& x : b)
      if (rng.chance(0.1)) x = -1;
    const double got = ami_labels(a, b);
    const double want = ami_reference(a, b);
    CHECK(got == Catch::Approx(want).margin(1e-10));
    CHECK(ami_labels(b, a) == Catch::Approx(got).margin(1e-12));  // symmetry
  }
}

TEST_CASE("ami over partitions uses universe intersection") {
  auto ip = [](const std::string& s) { return IpAddr::parse(s).value(); };
  Partition p1({ip("10.0.0.1"), ip("10.0.0.2"), ip("10.0.0.3")}, {0, 0, 1}, "m1");
  Partition p2({ip("10.0.0.2"), ip("10.0.0.3"), ip("10.0.0.4")}, {0, 1, 1}, "m2");
  auto v = ami(p1, p2);
  REQUIRE(v.has_value());  // overlap = {.2, .3}, 2 points
  Partition p3({ip("10.9.9.9")}, {0}, "m3");
  CHECK_FALSE(ami(p1, p3).has_value());  // overlap < 2
}

TEST_CASE("optics: well-separated groups become exactly two clusters") {
  // 6 points: two groups, within-distance <= 1, between >= 100
  std::vector<std::vector<double>> m(6, std::vector<double>(6, 100.0));
  for (std::size_t i = 0; i < 6; ++i) m[i][i] = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) {
        m[i][j] = 1.0;
        m[i + 3][j + 3] = 1.0;
      }
    }
  auto labels = optics(matrix_from(m), 3, 0.05);
  REQUIRE(labels.size() == 6);
  CHECK(labels[0] >= 0);
  CHECK(labels[0] == labels[1]);
  CHECK(labels[1] == labels[2]);
  CHECK(labels[3] >= 0);
  CHECK(labels[3] == labels[4]);
  CHECK(labels[4] == labels[5]);
  CHECK(labels[0] != labels[3]);
}

TEST_CASE("optics: all-equal distances never split") {
  for (std::size_t n : {4, 7, 12}) {
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 5.0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 0.0;
    auto labels = optics(matrix_from(m), 3, 0.05);
    std::set<int> clusters;
    for (int l : labels)
      if (l >= 0) clusters.insert(l);
    CHECK(clusters.size() <= 1);  // one cluster or all noise, never more
  }
}

TEST_CASE("optics: degenerate inputs") {
  DistanceMatrix one(1);
  CHECK(optics(one, 3, 0.05) == std::vector<int>{kNoise});
  DistanceMatrix two(2);
  two.set(0, 1, 1.0);
  CHECK(optics(two, 3, 0.05) == std::vector<int>(2, kNoise));
  CHECK_THROWS_AS(optics(two, 1, 0.05), ConfigError);
  CHECK_THROWS_AS(optics(two, 2, 1.5), ConfigError);
}

TEST_CASE("optics recovers planted clusters") {
  Rng rng(555);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 2 + static_cast<int>(rng.below(3));
    std::vector<int> truth;
    for (int c = 0; c < k; ++c) {
      const std::size_t sz = 4 + rng.below(5);
      for (std::size_t i = 0; i < sz; ++i) truth.push_back(c);
    }
    rng.shuffle(truth);
    const std::size_t n = truth.size();
    DistanceMatrix dm(n);
    // Valleys must be flat relative to xi: intra-cluster ratios stay under
    // 1/(1-xi), otherwise xi-extraction correctly reports sub-structure.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const bool same = truth[i] == truth[j];
        dm.set(i, j, same ? rng.uniform(0.100, 0.103) : rng.uniform(10.0, 20.0));
      }
    auto labels = optics(dm, 3, 0.05);
    // every point clustered, co-membership equals the planted structure
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(labels[i] >= 0);
      for (std::size_t j = i + 1; j < n; ++j)
        CHECK((labels[i] == labels[j]) == (truth[i] == truth[j]));
    }
  }
}

TEST_CASE("optics is invariant to index permutation up to relabeling") {
  Rng rng(777);
  const std::size_t n = 18;
  DistanceMatrix dm(n);
  std::vector<int> truth(n);
  for (std::size_t i = 0; i < n; ++i) truth[i] = static_cast<int>(i % 3);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      dm.set(i, j, truth[i] == truth[j] ? rng.uniform(0.100, 0.103) : rng.uniform(5.0, 6.0));
  auto base = optics(dm, 3, 0.05);

  // permute indices, cluster, then map back
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  rng.shuffle(perm);
  DistanceMatrix pm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pm.set(i, j, dm(perm[i], perm[j]));
  auto permuted = optics(pm, 3, 0.05);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      CHECK((permuted[i] == permuted[j]) == (base[perm[i]] == base[perm[j]]));
}
