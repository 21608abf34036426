#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "marketmap/correl.hpp"
#include "marketmap/panel.hpp"

namespace marketmap {

enum class NetworkKind { mst, asset_graph };

struct NetworkNode {
  std::string ticker;
  std::string sector;  // empty when no metadata row matched
  std::string company;
};

struct NetworkEdge {
  int i = 0;  // node indices, always i < j
  int j = 0;
  double distance = 0.0;
  double correlation = 0.0;
  bool random_flag = false;  // distance above the shuffle-noise mean
};

/// Undirected weighted graph over the assets, either the minimum spanning
/// tree or a threshold asset graph. Nodes keep their DistanceMatrix order;
/// isolated nodes stay in the node list.
struct AssetNetwork {
  NetworkKind kind = NetworkKind::asset_graph;
  double threshold = 0.0;  // meaningful for asset graphs only
  std::vector<NetworkNode> nodes;
  std::vector<NetworkEdge> edges;
};

/// Minimum spanning tree of the distance matrix. Ties are broken by sorting
/// candidate edges on (distance, smaller index, larger index), so the edge
/// set is reproducible across runs. When a noise estimate is given, edges
/// with distance strictly above noise.mean are flagged as possibly random.
AssetNetwork build_mst(const DistanceMatrix& dist,
                       const std::vector<AssetMeta>& meta,
                       const std::optional<NoiseThreshold>& noise = std::nullopt);

/// Graph with exactly the pairs at distance <= threshold (inclusive).
AssetNetwork build_asset_graph(const DistanceMatrix& dist,
                               const std::vector<AssetMeta>& meta,
                               double threshold,
                               const std::optional<NoiseThreshold>& noise = std::nullopt);

/// One asset graph per threshold; thresholds must be ascending, each in [0,2].
std::vector<AssetNetwork> threshold_sweep(
    const DistanceMatrix& dist, const std::vector<AssetMeta>& meta,
    const std::vector<double>& thresholds,
    const std::optional<NoiseThreshold>& noise = std::nullopt);

enum class NetworkFormat { dot, graphml, json, edge_csv };

/// Writes the network in the requested format. DOT renders flagged edges
/// dashed and colors nodes by sector; JSON uses the schema
/// {nodes:[{id,sector}], edges:[{source,target,distance,correlation,random}]};
/// edge-csv has header source,target,distance,correlation,random_flag.
void export_network(const AssetNetwork& net, NetworkFormat format,
                    const std::filesystem::path& path);

/// Reads a network previously written with NetworkFormat::json.
AssetNetwork import_network_json(const std::filesystem::path& path);

}  // namespace marketmap
