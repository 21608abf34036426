#include "marketmap/netgraph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace marketmap {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void check_square(const DistanceMatrix& dist) {
  if (dist.values.rows() != dist.values.cols())
    fail("distance matrix must be square");
  if (static_cast<std::size_t>(dist.values.rows()) != dist.tickers.size())
    fail("distance matrix shape does not match the ticker list");
}

std::vector<NetworkNode> make_nodes(const std::vector<std::string>& tickers,
                                    const std::vector<AssetMeta>& meta) {
  std::map<std::string, const AssetMeta*> by_ticker;
  for (const auto& m : meta) by_ticker[m.ticker] = &m;
  std::vector<NetworkNode> nodes;
  nodes.reserve(tickers.size());
  for (const auto& t : tickers) {
    NetworkNode node;
    node.ticker = t;
    if (const auto it = by_ticker.find(t); it != by_ticker.end()) {
      node.sector = it->second->sector;
      node.company = it->second->company;
    }
    nodes.push_back(std::move(node));
  }
  return nodes;
}

NetworkEdge make_edge(const DistanceMatrix& dist, int i, int j,
                      const std::optional<NoiseThreshold>& noise) {
  NetworkEdge e;
  e.i = i;
  e.j = j;
  e.distance = dist.values(i, j);
  e.correlation = 1.0 - e.distance;
  e.random_flag = noise.has_value() && e.distance > noise->mean;
  return e;
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// FNV-1a; std::hash would do, but its values are not pinned by the standard
// and the sector colors should not depend on the platform.
std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string sector_color(const std::string& sector) {
  static const char* palette[] = {
      "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
      "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f",
  };
  if (sector.empty()) return "#f0f0f0";
  return palette[fnv1a(sector) % (sizeof palette / sizeof palette[0])];
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void write_dot(const AssetNetwork& net, std::ostream& out) {
  out << "graph marketmap {\n";
  out << "  layout=neato;\n  overlap=false;\n";
  out << "  node [shape=circle, style=filled, fontsize=10];\n";
  for (const auto& node : net.nodes) {
    out << "  \"" << node.ticker << "\" [fillcolor=\""
        << sector_color(node.sector) << "\"";
    if (!node.sector.empty()) out << ", tooltip=\"" << node.sector << "\"";
    out << "];\n";
  }
  for (const auto& e : net.edges) {
    out << "  \"" << net.nodes[e.i].ticker << "\" -- \""
        << net.nodes[e.j].ticker << "\" [len=" << format_double(e.distance);
    if (e.random_flag) out << ", style=dashed";
    out << "];\n";
  }
  out << "}\n";
}

void write_graphml(const AssetNetwork& net, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
  out << "  <key id=\"sector\" for=\"node\" attr.name=\"sector\" attr.type=\"string\"/>\n";
  out << "  <key id=\"distance\" for=\"edge\" attr.name=\"distance\" attr.type=\"double\"/>\n";
  out << "  <key id=\"correlation\" for=\"edge\" attr.name=\"correlation\" attr.type=\"double\"/>\n";
  out << "  <key id=\"random\" for=\"edge\" attr.name=\"random\" attr.type=\"boolean\"/>\n";
  out << "  <graph id=\"marketmap\" edgedefault=\"undirected\">\n";
  for (const auto& node : net.nodes) {
    out << "    <node id=\"" << xml_escape(node.ticker) << "\">\n";
    out << "      <data key=\"sector\">" << xml_escape(node.sector) << "</data>\n";
    out << "    </node>\n";
  }
  for (const auto& e : net.edges) {
    out << "    <edge source=\"" << xml_escape(net.nodes[e.i].ticker)
        << "\" target=\"" << xml_escape(net.nodes[e.j].ticker) << "\">\n";
    out << "      <data key=\"distance\">" << format_double(e.distance) << "</data>\n";
    out << "      <data key=\"correlation\">" << format_double(e.correlation)
        << "</data>\n";
    out << "      <data key=\"random\">" << (e.random_flag ? "true" : "false")
        << "</data>\n";
    out << "    </edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void write_json(const AssetNetwork& net, std::ostream& out) {
  nlohmann::ordered_json doc;
  doc["kind"] = net.kind == NetworkKind::mst ? "mst" : "asset-graph";
  if (net.kind == NetworkKind::asset_graph) doc["threshold"] = net.threshold;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : net.nodes)
    doc["nodes"].push_back({{"id", node.ticker}, {"sector", node.sector}});
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : net.edges)
    doc["edges"].push_back({{"source", e.i},
                            {"target", e.j},
                            {"distance", e.distance},
                            {"correlation", e.correlation},
                            {"random", e.random_flag}});
  out << doc.dump(2) << '\n';
}

void write_edge_csv(const AssetNetwork& net, std::ostream& out) {
  out << "source,target,distance,correlation,random_flag\n";
  for (const auto& e : net.edges)
    out << net.nodes[e.i].ticker << ',' << net.nodes[e.j].ticker << ','
        << format_double(e.distance) << ',' << format_double(e.correlation)
        << ',' << (e.random_flag ? 1 : 0) << '\n';
}

}  // namespace

AssetNetwork build_mst(const DistanceMatrix& dist,
                       const std::vector<AssetMeta>& meta,
                       const std::optional<NoiseThreshold>& noise) {
  check_square(dist);
  const int n = static_cast<int>(dist.values.rows());
  if (n < 2) fail("spanning tree needs at least two assets, got " + std::to_string(n));

  struct Candidate {
    double d;
    int i, j;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      candidates.push_back({dist.values(i, j), i, j});
  // deterministic tie-break keeps the edge set stable across runs
  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate& a, const Candidate& b) {
              return std::tie(a.d, a.i, a.j) < std::tie(b.d, b.i, b.j);
            });

  AssetNetwork net;
  net.kind = NetworkKind::mst;
  net.nodes = make_nodes(dist.tickers, meta);
  Dsu dsu(n);
  for (const auto& c : candidates) {
    if (!dsu.unite(c.i, c.j)) continue;
    net.edges.push_back(make_edge(dist, c.i, c.j, noise));
    if (net.edges.size() == static_cast<std::size_t>(n - 1)) break;
  }
  return net;
}

AssetNetwork build_asset_graph(const DistanceMatrix& dist,
                               const std::vector<AssetMeta>& meta,
                               double threshold,
                               const std::optional<NoiseThreshold>& noise) {
  check_square(dist);
  if (!(threshold >= 0.0 && threshold <= 2.0))
    fail("threshold must lie in [0, 2], got " + format_double(threshold));
  AssetNetwork net;
  net.kind = NetworkKind::asset_graph;
  net.threshold = threshold;
  net.nodes = make_nodes(dist.tickers, meta);
  const int n = static_cast<int>(dist.values.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (dist.values(i, j) <= threshold)
        net.edges.push_back(make_edge(dist, i, j, noise));
  return net;
}

std::vector<AssetNetwork> threshold_sweep(
    const DistanceMatrix& dist, const std::vector<AssetMeta>& meta,
    const std::vector<double>& thresholds,
    const std::optional<NoiseThreshold>& noise) {
  for (std::size_t k = 1; k < thresholds.size(); ++k)
    if (thresholds[k] < thresholds[k - 1])
      fail("thresholds must be ascending");
  std::vector<AssetNetwork> nets;
  nets.reserve(thresholds.size());
  for (double t : thresholds)
    nets.push_back(build_asset_graph(dist, meta, t, noise));
  return nets;
}

void export_network(const AssetNetwork& net, NetworkFormat format,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  switch (format) {
    case NetworkFormat::dot: write_dot(net, out); break;
    case NetworkFormat::graphml: write_graphml(net, out); break;
    case NetworkFormat::json: write_json(net, out); break;
    case NetworkFormat::edge_csv: write_edge_csv(net, out); break;
  }
  if (!out) fail("failed writing " + path.string());
}

AssetNetwork import_network_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    fail("invalid network JSON in " + path.string() + ": " + e.what());
  }
  AssetNetwork net;
  const std::string kind = doc.at("kind").get<std::string>();
  if (kind == "mst") {
    net.kind = NetworkKind::mst;
  } else if (kind == "asset-graph") {
    net.kind = NetworkKind::asset_graph;
    net.threshold = doc.at("threshold").get<double>();
  } else {
    fail("unknown network kind '" + kind + "' in " + path.string());
  }
  for (const auto& node : doc.at("nodes")) {
    NetworkNode n;
    n.ticker = node.at("id").get<std::string>();
    n.sector = node.at("sector").get<std::string>();
    net.nodes.push_back(std::move(n));
  }
  for (const auto& edge : doc.at("edges")) {
    NetworkEdge e;
    e.i = edge.at("source").get<int>();
    e.j = edge.at("target").get<int>();
    e.distance = edge.at("distance").get<double>();
    e.correlation = edge.at("correlation").get<double>();
    e.random_flag = edge.at("random").get<bool>();
    if (e.i < 0 || e.j < 0 || e.i >= static_cast<int>(net.nodes.size()) ||
        e.j >= static_cast<int>(net.nodes.size()))
      fail("edge endpoint out of range in " + path.string());
    net.edges.push_back(e);
  }
  return net;
}

}  // namespace marketmap
