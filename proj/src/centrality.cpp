#include "marketmap/centrality.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <queue>
#include <stdexcept>

namespace marketmap {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string quote_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::vector<int>> adjacency_lists(const AssetNetwork& net) {
  std::vector<std::vector<int>> adj(net.nodes.size());
  for (const auto& e : net.edges) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  return adj;
}

}  // namespace

std::vector<int> node_degree(const AssetNetwork& net) {
  std::vector<int> deg(net.nodes.size(), 0);
  for (const auto& e : net.edges) {
    ++deg[e.i];
    ++deg[e.j];
  }
  return deg;
}

std::vector<double> node_strength(const AssetNetwork& net) {
  std::vector<double> s(net.nodes.size(), 0.0);
  for (const auto& e : net.edges) {
    s[e.i] += e.correlation;
    s[e.j] += e.correlation;
  }
  return s;
}

EigenvectorCentrality eigenvector_centrality(const AssetNetwork& net,
                                             double tol, int max_iter) {
  const int n = static_cast<int>(net.nodes.size());
  if (net.edges.empty())
    fail("eigenvector centrality is undefined on a graph with no edges");

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : net.edges) {
    a(e.i, e.j) = 1.0;
    a(e.j, e.i) = 1.0;
  }

  // Power iteration on A + I: the shift leaves the eigenvectors alone but
  // breaks the sign oscillation that plain iteration hits on bipartite
  // graphs (every tree, in particular). Convergence is still judged on A.
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
  EigenvectorCentrality out;
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd ax = a * x;
    const double lambda = x.dot(ax);
    if ((ax - lambda * x).norm() <= tol) {
      out.weights.assign(x.data(), x.data() + n);
      for (double& w : out.weights) w = std::max(0.0, w);
      out.eigenvalue = lambda;
      out.iterations = iter;
      return out;
    }
    if (iter >= max_iter)
      fail("eigenvector centrality failed to converge after " +
           std::to_string(max_iter) + " iterations (eigenvalue estimate " +
           format_double(lambda) + ")");
    x = (ax + x).normalized();
  }
}

std::vector<double> betweenness_centrality(const AssetNetwork& net) {
  const int n = static_cast<int>(net.nodes.size());
  const auto adj = adjacency_lists(net);
  std::vector<double> b(n, 0.0);

  // Brandes accumulation, once per source; keeping both directions of every
  // pair counts ordered pairs, which is the convention used throughout.
  std::vector<int> dist(n), order;
  std::vector<double> sigma(n), delta(n);
  std::vector<std::vector<int>> pred(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto& p : pred) p.clear();
    order.clear();

    dist[s] = 0;
    sigma[s] = 1.0;
    std::vector<int> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int v = queue[head];
      order.push_back(v);
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int w = *it;
      for (int v : pred[w])
        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) b[w] += delta[w];
    }
  }
  return b;
}

ClosenessCentrality closeness_centrality(const AssetNetwork& net,
                                         ClosenessMode mode) {
  const int n = static_cast<int>(net.nodes.size());
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const auto& e : net.edges) {
    adj[e.i].emplace_back(e.j, e.distance);
    adj[e.j].emplace_back(e.i, e.distance);
  }

  ClosenessCentrality out;
  out.lengths.resize(n);
  out.inverse.resize(n);
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n);
  for (int s = 0; s < n; ++s) {
    std::fill(d.begin(), d.end(), inf);
    d[s] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    heap.push({0.0, s});
    while (!heap.empty()) {
      const auto [dv, v] = heap.top();
      heap.pop();
      if (dv > d[v]) continue;
      for (const auto& [w, len] : adj[v])
        if (dv + len < d[w]) {
          d[w] = dv + len;
          heap.push({d[w], w});
        }
    }
    double sum = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != s && d[j] < inf) sum += d[j];
    const double len = mode == ClosenessMode::mean ? sum / n : sum;
    out.lengths[s] = len;
    out.inverse[s] = len > 0.0 ? 1.0 / len : 0.0;
  }
  return out;
}

std::vector<int> k_shell_decomposition(const AssetNetwork& net) {
  const int n = static_cast<int>(net.nodes.size());
  const auto adj = adjacency_lists(net);
  std::vector<int> deg = node_degree(net);
  std::vector<int> shell(n, 0);
  std::vector<bool> removed(n, false);
  int remaining = n;
  int k = 0;
  while (remaining > 0) {
    int min_deg = std::numeric_limits<int>::max();
    for (int v = 0; v < n; ++v)
      if (!removed[v]) min_deg = std::min(min_deg, deg[v]);
    k = std::max(k, min_deg);
    // peel everything at or below k, cascading until the stage stabilizes
    std::vector<int> stack;
    for (int v = 0; v < n; ++v)
      if (!removed[v] && deg[v] <= k) stack.push_back(v);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (removed[v]) continue;
      removed[v] = true;
      shell[v] = k;
      --remaining;
      for (int w : adj[v])
        if (!removed[w] && --deg[w] <= k) stack.push_back(w);
    }
  }
  return shell;
}

DistributionTable degree_distribution(const std::vector<int>& degrees,
                                      int bin_width) {
  if (bin_width < 1) fail("bin width must be a positive integer");
  DistributionTable table;
  if (degrees.empty()) return table;
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  for (int d : degrees) {
    if (d < 0) fail("degrees cannot be negative");
    lo = std::min(lo, d / bin_width);
    hi = std::max(hi, d / bin_width);
  }
  table.lower_edges.resize(hi - lo + 1);
  table.frequencies.assign(hi - lo + 1, 0);
  for (int b = lo; b <= hi; ++b) table.lower_edges[b - lo] = b * bin_width;
  for (int d : degrees) ++table.frequencies[d / bin_width - lo];
  return table;
}

CcdfSeries ccdf(const std::vector<double>& values,
                const std::optional<std::pair<double, double>>& fit_quantiles) {
  if (values.empty()) fail("ccdf of an empty sample is undefined");
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < 0.0)
    fail("ccdf expects nonnegative values, got " + format_double(sorted.front()));

  const double n = static_cast<double>(sorted.size());
  CcdfSeries out;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (k > 0 && sorted[k] == sorted[k - 1]) continue;
    out.values.push_back(sorted[k]);
    out.probabilities.push_back((n - static_cast<double>(k)) / n);
  }

  if (!fit_quantiles) return out;
  const auto [q_lo, q_hi] = *fit_quantiles;
  if (!(q_lo >= 0.0 && q_hi <= 1.0 && q_lo < q_hi))
    fail("fit quantiles must satisfy 0 <= lo < hi <= 1");

  const auto quantile = [&](double q) {
    const double pos = q * (n - 1.0);
    const std::size_t base = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(base);
    if (base + 1 >= sorted.size()) return sorted.back();
    return sorted[base] + frac * (sorted[base + 1] - sorted[base]);
  };
  const double x_lo = quantile(q_lo);
  const double x_hi = quantile(q_hi);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int points = 0;
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double v = out.values[k];
    if (v <= 0.0 || v < x_lo || v > x_hi) continue;
    const double lx = std::log10(v);
    const double ly = std::log10(out.probabilities[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++points;
  }
  if (points < 2)
    fail("power-law fit needs at least two distinct positive values inside "
         "the quantile range, found " + std::to_string(points));
  const double denom = points * sxx - sx * sx;
  if (denom == 0.0) fail("power-law fit is degenerate: no spread in log-values");
  const double slope = (points * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / points;

  PowerLawFit fit;
  fit.alpha = -slope;
  fit.c = std::pow(10.0, intercept);
  fit.q_lo = q_lo;
  fit.q_hi = q_hi;
  fit.x_lo = x_lo;
  fit.x_hi = x_hi;
  fit.points = points;
  out.fit = fit;
  return out;
}

std::vector<std::pair<int, int>> degree_vs_kshell(const AssetNetwork& net) {
  const auto shells = k_shell_decomposition(net);
  const auto degrees = node_degree(net);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(shells.size());
  for (std::size_t v = 0; v < shells.size(); ++v)
    pairs.emplace_back(shells[v], degrees[v]);
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return pairs;
}

CentralityReport compute_centrality_report(const AssetNetwork& net,
                                           ClosenessMode mode, double eig_tol,
                                           int eig_max_iter) {
  CentralityReport rep;
  rep.closeness_mode = mode;
  for (const auto& node : net.nodes) {
    rep.tickers.push_back(node.ticker);
    rep.sectors.push_back(node.sector);
  }
  rep.degree = node_degree(net);
  rep.strength = node_strength(net);
  if (net.edges.empty()) {
    rep.eigenvector.assign(net.nodes.size(), 0.0);
  } else {
    rep.eigenvector = eigenvector_centrality(net, eig_tol, eig_max_iter).weights;
  }
  rep.betweenness = betweenness_centrality(net);
  const ClosenessCentrality c = closeness_centrality(net, mode);
  rep.closeness_len = c.lengths;
  rep.inv_closeness = c.inverse;
  rep.kshell = k_shell_decomposition(net);
  return rep;
}

void write_centrality_csv(const CentralityReport& report,
                          const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << "ticker,sector,degree,strength,eigenvector,betweenness,"
         "closeness_len,inv_closeness,kshell\n";
  for (std::size_t v = 0; v < report.tickers.size(); ++v)
    out << quote_field(report.tickers[v]) << ',' << quote_field(report.sectors[v]) << ','
        << report.degree[v] << ',' << format_double(report.strength[v]) << ','
        << format_double(report.eigenvector[v]) << ','
        << format_double(report.betweenness[v]) << ','
        << format_double(report.closeness_len[v]) << ','
        << format_double(report.inv_closeness[v]) << ',' << report.kshell[v]
        << '\n';
  if (!out) fail("failed writing " + path.string());
}

void write_ccdf_tsv(const CcdfSeries& series, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  for (std::size_t k = 0; k < series.values.size(); ++k)
    out << format_double(series.values[k]) << '\t'
        << format_double(series.probabilities[k]) << '\n';
  if (!out) fail("failed writing " + path.string());
}

void write_distribution_csv(const DistributionTable& table,
                            const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << "bin_low,frequency\n";
  for (std::size_t k = 0; k < table.lower_edges.size(); ++k)
    out << table.lower_edges[k] << ',' << table.frequencies[k] << '\n';
  if (!out) fail("failed writing " + path.string());
}

}  // namespace marketmap
