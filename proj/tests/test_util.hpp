#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "marketmap/netgraph.hpp"
#include "marketmap/panel.hpp"

namespace testutil {

inline std::vector<std::string> default_tickers(int n) {
  std::vector<std::string> t;
  for (int i = 0; i < n; ++i) t.push_back("A" + std::to_string(i + 1));
  return t;
}

/// ReturnPanel from per-asset columns.
inline marketmap::ReturnPanel make_panel(
    const std::vector<std::vector<double>>& columns,
    std::vector<std::string> tickers = {}) {
  marketmap::ReturnPanel p;
  const int n = static_cast<int>(columns.size());
  const int t = static_cast<int>(columns.front().size());
  p.tickers = tickers.empty() ? default_tickers(n) : std::move(tickers);
  p.returns.resize(t, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < t; ++k) p.returns(k, j) = columns[j][k];
  return p;
}

/// Network straight from an edge list; correlation is kept consistent with
/// the distance so the type invariant holds.
inline marketmap::AssetNetwork make_network(
    int n, const std::vector<std::tuple<int, int, double>>& edges,
    marketmap::NetworkKind kind = marketmap::NetworkKind::asset_graph) {
  marketmap::AssetNetwork net;
  net.kind = kind;
  net.threshold = 2.0;
  for (int i = 0; i < n; ++i) net.nodes.push_back({"A" + std::to_string(i + 1), "S", ""});
  for (auto [i, j, d] : edges) {
    marketmap::NetworkEdge e;
    e.i = std::min(i, j);
    e.j = std::max(i, j);
    e.distance = d;
    e.correlation = 1.0 - d;
    net.edges.push_back(e);
  }
  return net;
}

inline marketmap::DistanceMatrix make_distance(const Eigen::MatrixXd& values) {
  marketmap::DistanceMatrix d;
  d.tickers = default_tickers(static_cast<int>(values.rows()));
  d.values = values;
  return d;
}

/// Unique scratch directory, removed on destruction.
struct TmpDir {
  std::filesystem::path path;
  TmpDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("marketmap_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TmpDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::filesystem::path file(const std::string& name) const { return path / name; }
};

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace testutil
