#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "doctest.h"
#include "marketmap/centrality.hpp"
#include "marketmap/correl.hpp"
#include "marketmap/netgraph.hpp"
#include "marketmap/panel.hpp"
#include "marketmap/rng.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace marketmap;
using testutil::make_network;

namespace {

AssetNetwork random_graph(int n, double p, rng::SplitMix64& g,
                          bool random_weights = true) {
  std::vector<std::tuple<int, int, double>> edges;
  for (auto [i, j] : oracle::gnp_edges(n, p, g))
    edges.emplace_back(i, j, random_weights ? 0.1 + 1.4 * g.next_unit() : 1.0);
  return make_network(n, edges);
}

std::vector<std::pair<int, int>> plain_edges(const AssetNetwork& net) {
  std::vector<std::pair<int, int>> es;
  for (const auto& e : net.edges) es.emplace_back(e.i, e.j);
  return es;
}

}  // namespace

TEST_SUITE_BEGIN("centrality");

TEST_CASE("degree") {
  SUBCASE("path a-b-c") {
    const AssetNetwork net = make_network(3, {{0, 1, 0.5}, {1, 2, 0.5}});
    CHECK(node_degree(net) == std::vector<int>{1, 2, 1});
  }
  SUBCASE("isolated nodes read zero") {
    const AssetNetwork net = make_network(4, {{0, 1, 0.5}});
    CHECK(node_degree(net) == std::vector<int>{1, 1, 0, 0});
  }
  SUBCASE("tree degrees sum to 2(N-1)") {
    rng::SplitMix64 g(15);
    for (int n : {5, 9, 14}) {
      std::vector<std::tuple<int, int, double>> es;
      for (auto [i, j] : oracle::random_tree(n, g)) es.emplace_back(i, j, 0.3);
      const auto deg = node_degree(make_network(n, es));
      CHECK(std::accumulate(deg.begin(), deg.end(), 0) == 2 * (n - 1));
    }
  }
  SUBCASE("matches adjacency row sums on random graphs") {
    rng::SplitMix64 g(16);
    const AssetNetwork net = random_graph(8, 0.4, g);
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(8, 8);
    for (const auto& e : net.edges) a(e.i, e.j) = a(e.j, e.i) = 1;
    const auto deg = node_degree(net);
    for (int v = 0; v < 8; ++v) CHECK(deg[v] == a.row(v).sum());
  }
}

TEST_CASE("strength") {
  SUBCASE("single edge credits both endpoints once") {
    const AssetNetwork net = make_network(3, {{0, 1, 0.1}});  // c = 0.9
    const auto s = node_strength(net);
    CHECK(s[0] == doctest::Approx(0.9));
    CHECK(s[1] == doctest::Approx(0.9));
    CHECK(s[2] == 0.0);
  }
  SUBCASE("matches the brute-force incident sum") {
    rng::SplitMix64 g(17);
    const AssetNetwork net = random_graph(6, 0.6, g);
    const auto s = node_strength(net);
    for (int v = 0; v < 6; ++v) {
      double want = 0;
      for (const auto& e : net.edges)
        if (e.i == v || e.j == v) want += e.correlation;
      CHECK(s[v] == doctest::Approx(want).epsilon(1e-14));
    }
    const auto deg = node_degree(net);
    for (int v = 0; v < 6; ++v) {
      CHECK(s[v] <= deg[v] + 1e-12);
      CHECK(s[v] >= -deg[v] - 1e-12);
    }
  }
}

TEST_CASE("eigenvector centrality") {
  SUBCASE("complete graph K4 is uniform") {
    const AssetNetwork k4 = make_network(
        4, {{0, 1, .5}, {0, 2, .5}, {0, 3, .5}, {1, 2, .5}, {1, 3, .5}, {2, 3, .5}});
    const EigenvectorCentrality e = eigenvector_centrality(k4);
    for (double w : e.weights) CHECK(w == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(e.eigenvalue == doctest::Approx(3.0).epsilon(1e-10));
  }
  SUBCASE("star with three leaves matches the closed form") {
    const AssetNetwork star = make_network(4, {{0, 1, .5}, {0, 2, .5}, {0, 3, .5}});
    const EigenvectorCentrality e = eigenvector_centrality(star);
    CHECK(e.weights[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    for (int leaf : {1, 2, 3})
      CHECK(e.weights[leaf] == doctest::Approx(1.0 / std::sqrt(6.0)).epsilon(1e-8));
    CHECK(e.eigenvalue == doctest::Approx(std::sqrt(3.0)).epsilon(1e-8));
  }
  SUBCASE("residual and norm contracts hold on random graphs") {
    rng::SplitMix64 g(18);
    for (int trial = 0; trial < 15; ++trial) {
      const AssetNetwork net = random_graph(5 + g.next_below(10), 0.35, g);
      if (net.edges.empty()) continue;
      const EigenvectorCentrality e = eigenvector_centrality(net);
      const int n = static_cast<int>(net.nodes.size());
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      for (const auto& ed : net.edges) a(ed.i, ed.j) = a(ed.j, ed.i) = 1.0;
      Eigen::VectorXd x(n);
      for (int v = 0; v < n; ++v) {
        x(v) = e.weights[v];
        CHECK(e.weights[v] >= 0.0);
      }
      CHECK(std::abs(x.norm() - 1.0) <= 1e-12);
      CHECK((a * x - e.eigenvalue * x).norm() <= 1e-10);
    }
  }
  SUBCASE("weight collapses onto the dominant component") {
    // triangle (lambda 2) beats the lone edge (lambda 1)
    const AssetNetwork net =
        make_network(5, {{0, 1, .5}, {1, 2, .5}, {0, 2, .5}, {3, 4, .5}});
    const EigenvectorCentrality e = eigenvector_centrality(net);
    for (int v : {0, 1, 2}) CHECK(e.weights[v] > 0.1);
    for (int v : {3, 4}) CHECK(e.weights[v] <= 1e-8);
    CHECK(e.eigenvalue == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("edgeless graph raises") {
    CHECK_THROWS(eigenvector_centrality(make_network(3, {})));
  }
  SUBCASE("iteration budget exhaustion raises and reports lambda") {
    const AssetNetwork path = make_network(3, {{0, 1, .5}, {1, 2, .5}});
    try {
      eigenvector_centrality(path, 1e-10, 1);
      FAIL("expected an exception");
    } catch (const std::exception& ex) {
      const std::string msg = ex.what();
      CHECK(msg.find("converge") != std::string::npos);
      CHECK(msg.find("1.4") != std::string::npos);  // lambda estimate near sqrt(2)
    }
  }
}

TEST_CASE("betweenness centrality") {
  SUBCASE("path a-b-c") {
    const AssetNetwork net = make_network(3, {{0, 1, .5}, {1, 2, .5}});
    const auto b = betweenness_centrality(net);
    CHECK(b[0] == 0.0);
    CHECK(b[1] == 2.0);  // ordered pairs (a,c) and (c,a)
    CHECK(b[2] == 0.0);
  }
  SUBCASE("star center carries all ordered leaf pairs") {
    const AssetNetwork star =
        make_network(5, {{0, 1, .5}, {0, 2, .5}, {0, 3, .5}, {0, 4, .5}});
    const auto b = betweenness_centrality(star);
    CHECK(b[0] == 12.0);  // 4 * 3 ordered pairs
    for (int leaf : {1, 2, 3, 4}) CHECK(b[leaf] == 0.0);
  }
  SUBCASE("complete graph has no intermediaries") {
    std::vector<std::tuple<int, int, double>> es;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) es.emplace_back(i, j, 0.5);
    const auto b = betweenness_centrality(make_network(5, es));
    for (double x : b) CHECK(x == 0.0);
  }
  SUBCASE("matches exhaustive path enumeration, disconnected included") {
    rng::SplitMix64 g(19);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 4 + static_cast<int>(g.next_below(5));  // 4..8
      const AssetNetwork net = random_graph(n, 0.35, g);
      const auto ours = betweenness_centrality(net);
      const auto want = oracle::exhaustive_betweenness(n, plain_edges(net));
      for (int v = 0; v < n; ++v)
        CHECK(ours[v] == doctest::Approx(want[v]).epsilon(1e-12));
    }
  }
  SUBCASE("tree closed form: twice the product of separated subtree sizes") {
    rng::SplitMix64 g(20);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 4 + static_cast<int>(g.next_below(7));  // 4..10
      const auto tree = oracle::random_tree(n, g);
      std::vector<std::tuple<int, int, double>> es;
      for (auto [i, j] : tree) es.emplace_back(i, j, 0.4);
      const AssetNetwork net = make_network(n, es);
      const auto b = betweenness_centrality(net);
      for (int k = 0; k < n; ++k) {
        // component sizes of the forest left when k is removed
        std::vector<int> comp(n, -1);
        int ncomp = 0;
        for (int s = 0; s < n; ++s) {
          if (s == k || comp[s] >= 0) continue;
          std::vector<int> queue{s};
          comp[s] = ncomp;
          for (std::size_t h = 0; h < queue.size(); ++h)
            for (auto [i, j] : tree) {
              int other = -1;
              if (i == queue[h]) other = j;
              if (j == queue[h]) other = i;
              if (other >= 0 && other != k && comp[other] < 0) {
                comp[other] = ncomp;
                queue.push_back(other);
              }
            }
          ++ncomp;
        }
        std::vector<double> sizes(ncomp, 0);
        for (int v = 0; v < n; ++v)
          if (v != k) ++sizes[comp[v]];
        double want = 0;
        for (int a = 0; a < ncomp; ++a)
          for (int c = a + 1; c < ncomp; ++c) want += 2.0 * sizes[a] * sizes[c];
        CHECK(b[k] == want);
      }
    }
  }
}

TEST_CASE("closeness centrality") {
  SUBCASE("two nodes at distance 0.5") {
    const AssetNetwork net = make_network(2, {{0, 1, 0.5}});
    const ClosenessCentrality c = closeness_centrality(net);
    CHECK(c.lengths[0] == 0.5);
    CHECK(c.inverse[0] == 2.0);
  }
  SUBCASE("path with unit edges") {
    const AssetNetwork net = make_network(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    const ClosenessCentrality c = closeness_centrality(net);
    CHECK(c.lengths[1] == 2.0);
    CHECK(c.lengths[0] == 3.0);
    CHECK(c.lengths[2] == 3.0);
  }
  SUBCASE("mean mode is the sum scaled by 1/n, exactly") {
    rng::SplitMix64 g(21);
    const AssetNetwork net = random_graph(7, 0.5, g);
    const int n = 7;
    const ClosenessCentrality s = closeness_centrality(net, ClosenessMode::sum);
    const ClosenessCentrality m = closeness_centrality(net, ClosenessMode::mean);
    for (int v = 0; v < n; ++v) {
      CHECK(m.lengths[v] == s.lengths[v] / n);
      if (s.lengths[v] > 0) CHECK(m.inverse[v] == 1.0 / (s.lengths[v] / n));
    }
  }
  SUBCASE("matches the Floyd-Warshall oracle") {
    rng::SplitMix64 g(22);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = 4 + static_cast<int>(g.next_below(4));  // 4..7
      const AssetNetwork net = random_graph(n, 0.45, g);
      std::vector<oracle::WeightedEdge> es;
      for (const auto& e : net.edges) es.push_back({e.i, e.j, e.distance});
      const Eigen::MatrixXd d = oracle::floyd_warshall(n, es);
      const ClosenessCentrality c = closeness_centrality(net);
      for (int v = 0; v < n; ++v) {
        double want = 0;
        for (int j = 0; j < n; ++j)
          if (j != v && std::isfinite(d(v, j))) want += d(v, j);
        CHECK(std::abs(c.lengths[v] - want) < 1e-12);
        if (want > 0)
          CHECK(std::abs(c.inverse[v] - 1.0 / want) < 1e-12);
        else
          CHECK(c.inverse[v] == 0.0);
      }
    }
  }
  SUBCASE("isolated nodes get the zero convention") {
    const AssetNetwork net = make_network(3, {{0, 1, 0.5}});
    const ClosenessCentrality c = closeness_centrality(net);
    CHECK(c.lengths[2] == 0.0);
    CHECK(c.inverse[2] == 0.0);
  }
}

TEST_CASE("k-shell decomposition") {
  SUBCASE("trees peel to shell one") {
    rng::SplitMix64 g(23);
    for (int n : {2, 6, 12}) {
      std::vector<std::tuple<int, int, double>> es;
      for (auto [i, j] : oracle::random_tree(n, g)) es.emplace_back(i, j, 0.4);
      const auto shells = k_shell_decomposition(make_network(n, es));
      for (int s : shells) CHECK(s == 1);
    }
  }
  SUBCASE("cycle C5 is its own 2-core") {
    const AssetNetwork c5 = make_network(
        5, {{0, 1, .5}, {1, 2, .5}, {2, 3, .5}, {3, 4, .5}, {0, 4, .5}});
    const auto shells = k_shell_decomposition(c5);
    for (int s : shells) CHECK(s == 2);
  }
  SUBCASE("isolated nodes land in shell zero") {
    const AssetNetwork net = make_network(4, {{0, 1, .5}, {1, 2, .5}});
    const auto shells = k_shell_decomposition(net);
    CHECK(shells[3] == 0);
    CHECK(shells[0] == 1);
  }
  SUBCASE("matches the maximal-subgraph core oracle") {
    rng::SplitMix64 g(24);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 5 + static_cast<int>(g.next_below(26));  // 5..30
      const AssetNetwork net = random_graph(n, 0.15 + 0.2 * g.next_unit(), g);
      CHECK(k_shell_decomposition(net) ==
            oracle::kcore_by_definition(n, plain_edges(net)));
    }
  }
  SUBCASE("adding an edge never lowers a shell") {
    rng::SplitMix64 g(25);
    for (int trial = 0; trial < 15; ++trial) {
      const int n = 8;
      AssetNetwork net = random_graph(n, 0.3, g);
      const auto before = k_shell_decomposition(net);
      // pick an absent pair
      const auto present = plain_edges(net);
      std::set<std::pair<int, int>> have(present.begin(), present.end());
      bool added = false;
      for (int i = 0; i < n && !added; ++i)
        for (int j = i + 1; j < n && !added; ++j)
          if (!have.count({i, j})) {
            NetworkEdge e;
            e.i = i;
            e.j = j;
            e.distance = 0.5;
            e.correlation = 0.5;
            net.edges.push_back(e);
            added = true;
          }
      if (!added) continue;
      const auto after = k_shell_decomposition(net);
      for (int v = 0; v < n; ++v) CHECK(after[v] >= before[v]);
    }
  }
}

TEST_CASE("degree distribution") {
  SUBCASE("explicit example") {
    const DistributionTable t = degree_distribution({1, 1, 2}, 1);
    CHECK(t.lower_edges == std::vector<int>{1, 2});
    CHECK(t.frequencies == std::vector<int>{2, 1});
  }
  SUBCASE("empty bins inside the range are listed") {
    const DistributionTable t = degree_distribution({0, 3, 3}, 1);
    CHECK(t.lower_edges == std::vector<int>{0, 1, 2, 3});
    CHECK(t.frequencies == std::vector<int>{1, 0, 0, 2});
  }
  SUBCASE("frequencies sum to the node count") {
    rng::SplitMix64 g(26);
    std::vector<int> degrees;
    for (int i = 0; i < 500; ++i)
      degrees.push_back(static_cast<int>(g.next_below(166)));
    for (int w : {1, 10}) {
      const DistributionTable t = degree_distribution(degrees, w);
      CHECK(std::accumulate(t.frequencies.begin(), t.frequencies.end(), 0) == 500);
    }
  }
  SUBCASE("bin width ten matches a hand-binned oracle") {
    rng::SplitMix64 g(27);
    std::vector<int> degrees;
    for (int i = 0; i < 300; ++i)
      degrees.push_back(static_cast<int>(g.next_below(166)));
    const DistributionTable t = degree_distribution(degrees, 10);
    std::vector<int> counts(17, 0);
    for (int d : degrees) ++counts[d / 10];
    int lo = 0;
    while (counts[lo] == 0) ++lo;
    int hi = 16;
    while (counts[hi] == 0) --hi;
    std::vector<int> edges, freqs;
    for (int b = lo; b <= hi; ++b) {
      edges.push_back(10 * b);
      freqs.push_back(counts[b]);
    }
    CHECK(t.lower_edges == edges);
    CHECK(t.frequencies == freqs);
  }
  SUBCASE("zero bin width rejected") {
    CHECK_THROWS(degree_distribution({1, 2}, 0));
  }
}

TEST_CASE("ccdf") {
  SUBCASE("explicit example") {
    const CcdfSeries s = ccdf({1, 2, 3});
    CHECK(s.values == std::vector<double>{1, 2, 3});
    REQUIRE(s.probabilities.size() == 3);
    CHECK(s.probabilities[0] == 1.0);
    CHECK(s.probabilities[1] == 2.0 / 3.0);
    CHECK(s.probabilities[2] == 1.0 / 3.0);
    CHECK_FALSE(s.fit.has_value());
  }
  SUBCASE("duplicates collapse onto distinct values") {
    const CcdfSeries s = ccdf({1, 1, 2});
    CHECK(s.values == std::vector<double>{1, 2});
    CHECK(s.probabilities == std::vector<double>{1.0, 1.0 / 3.0});
  }
  SUBCASE("starts at one and never increases") {
    rng::SplitMix64 g(28);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> xs;
      for (int i = 0; i < 200; ++i) xs.push_back(g.next_below(40));
      const CcdfSeries s = ccdf(xs);
      CHECK(s.probabilities.front() == 1.0);
      for (std::size_t k = 1; k < s.probabilities.size(); ++k) {
        CHECK(s.probabilities[k] <= s.probabilities[k - 1]);
        CHECK(s.probabilities[k] > 0.0);
        CHECK(s.values[k] > s.values[k - 1]);
      }
    }
  }
  SUBCASE("recovers the exponent of an exact Pareto sample") {
    const auto xs = oracle::pareto_samples(10000, 2.0, 1.0, 99);
    const CcdfSeries s = ccdf(xs, std::make_pair(0.1, 0.9));
    REQUIRE(s.fit.has_value());
    CHECK(s.fit->alpha > 1.9);
    CHECK(s.fit->alpha < 2.1);
    CHECK(s.fit->c > 0.0);
    CHECK(s.fit->q_lo == 0.1);
    CHECK(s.fit->q_hi == 0.9);
    CHECK(s.fit->points > 10);
  }
  SUBCASE("degenerate fits are rejected") {
    CHECK_THROWS(ccdf({0, 0, 0}, std::make_pair(0.1, 0.9)));
    CHECK_THROWS(ccdf({0, 0, 1, 2}, std::make_pair(0.1, 0.9)));
    CHECK_THROWS(ccdf({-1, 2, 3}));                          // negative input
    CHECK_THROWS(ccdf({1, 2, 3}, std::make_pair(0.9, 0.1)));  // inverted range
    CHECK_THROWS(ccdf({}));
  }
}

TEST_CASE("degree vs k-shell") {
  SUBCASE("trees pair every degree with shell one") {
    rng::SplitMix64 g(29);
    std::vector<std::tuple<int, int, double>> es;
    for (auto [i, j] : oracle::random_tree(9, g)) es.emplace_back(i, j, 0.4);
    const AssetNetwork net = make_network(9, es);
    for (auto [shell, degree] : degree_vs_kshell(net)) {
      CHECK(shell == 1);
      CHECK(degree >= 1);
    }
  }
  SUBCASE("equals the zip of the two underlying measures, sorted by shell") {
    rng::SplitMix64 g(30);
    const AssetNetwork net = random_graph(15, 0.3, g);
    const auto pairs = degree_vs_kshell(net);
    const auto shells = k_shell_decomposition(net);
    const auto degrees = node_degree(net);
    std::vector<std::pair<int, int>> want;
    for (std::size_t v = 0; v < shells.size(); ++v)
      want.emplace_back(shells[v], degrees[v]);
    std::stable_sort(want.begin(), want.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    CHECK(pairs == want);
    for (auto [shell, degree] : pairs) CHECK(shell <= degree);
  }
}

TEST_CASE("relabeling nodes permutes every measure identically") {
  rng::SplitMix64 g(31);
  const int n = 9;
  const AssetNetwork net = random_graph(n, 0.4, g);
  const std::vector<int> perm{4, 7, 0, 2, 8, 1, 6, 3, 5};

  AssetNetwork relabeled;
  relabeled.kind = net.kind;
  relabeled.threshold = net.threshold;
  relabeled.nodes.resize(n);
  for (int v = 0; v < n; ++v) relabeled.nodes[perm[v]] = net.nodes[v];
  for (const auto& e : net.edges) {
    NetworkEdge f = e;
    f.i = std::min(perm[e.i], perm[e.j]);
    f.j = std::max(perm[e.i], perm[e.j]);
    relabeled.edges.push_back(f);
  }

  const auto d1 = node_degree(net);
  const auto d2 = node_degree(relabeled);
  const auto s1 = node_strength(net);
  const auto s2 = node_strength(relabeled);
  const auto b1 = betweenness_centrality(net);
  const auto b2 = betweenness_centrality(relabeled);
  const auto c1 = closeness_centrality(net);
  const auto c2 = closeness_centrality(relabeled);
  const auto k1 = k_shell_decomposition(net);
  const auto k2 = k_shell_decomposition(relabeled);
  const auto e1 = eigenvector_centrality(net);
  const auto e2 = eigenvector_centrality(relabeled);
  for (int v = 0; v < n; ++v) {
    CHECK(d2[perm[v]] == d1[v]);
    CHECK(s2[perm[v]] == doctest::Approx(s1[v]).epsilon(1e-14));
    CHECK(b2[perm[v]] == doctest::Approx(b1[v]).epsilon(1e-12));
    CHECK(c2.lengths[perm[v]] == doctest::Approx(c1.lengths[v]).epsilon(1e-12));
    CHECK(k2[perm[v]] == k1[v]);
    CHECK(e2.weights[perm[v]] == doctest::Approx(e1.weights[v]).epsilon(1e-8));
  }
}

TEST_CASE("hub-dominated synthetic data crowns one leader across measures") {
  const SyntheticPanel sp = generate_synthetic_panel(
      30, 250, {{"HUB", 10, 0.9}, {"OTH", 20, 0.3}}, 0.3, 2);
  const CorrelationMatrix c = spearman_correlation(compute_log_returns(sp.prices));
  const DistanceMatrix d = distance_from_correlation(c);
  const AssetNetwork mst = build_mst(d, sp.meta);
  const auto deg = node_degree(mst);
  const auto str = node_strength(mst);
  const auto eig = eigenvector_centrality(mst).weights;
  const auto argmax = [](const auto& xs) {
    return std::distance(xs.begin(), std::max_element(xs.begin(), xs.end()));
  };
  const auto top = argmax(deg);
  CHECK(argmax(str) == top);
  CHECK(argmax(eig) == top);
  CHECK(mst.nodes[top].sector == "HUB");
}

TEST_CASE("centrality report") {
  rng::SplitMix64 g(32);
  const AssetNetwork net = random_graph(10, 0.4, g);
  const CentralityReport rep = compute_centrality_report(net);
  CHECK(rep.degree == node_degree(net));
  CHECK(rep.kshell == k_shell_decomposition(net));
  const auto strength = node_strength(net);
  const auto closeness = closeness_centrality(net);
  const auto eig = eigenvector_centrality(net);
  for (int v = 0; v < 10; ++v) {
    CHECK(rep.strength[v] == strength[v]);
    CHECK(rep.closeness_len[v] == closeness.lengths[v]);
    CHECK(rep.inv_closeness[v] == closeness.inverse[v]);
    CHECK(rep.eigenvector[v] == doctest::Approx(eig.weights[v]).epsilon(1e-12));
  }

  SUBCASE("edgeless graphs report a zero eigenvector column") {
    const CentralityReport empty = compute_centrality_report(make_network(3, {}));
    for (double w : empty.eigenvector) CHECK(w == 0.0);
    for (int s : empty.kshell) CHECK(s == 0);
  }
  SUBCASE("CSV header is stable") {
    testutil::TmpDir tmp;
    write_centrality_csv(rep, tmp.file("c.csv"));
    const std::string text = testutil::read_file(tmp.file("c.csv"));
    CHECK(text.rfind("ticker,sector,degree,strength,eigenvector,betweenness,"
                     "closeness_len,inv_closeness,kshell\n",
                     0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 11);
  }
}

TEST_CASE("ccdf TSV export") {
  testutil::TmpDir tmp;
  const CcdfSeries s = ccdf({1, 2, 2, 5});
  write_ccdf_tsv(s, tmp.file("s.tsv"));
  const std::string text = testutil::read_file(tmp.file("s.tsv"));
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
  CHECK(std::count(text.begin(), text.end(), '\t') == 3);
}

TEST_SUITE_END();
