#include "marketmap/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>

#include "marketmap/correl.hpp"
#include "marketmap/embed.hpp"
#include "marketmap/netgraph.hpp"
#include "marketmap/panel.hpp"

namespace marketmap {

namespace {

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

template <typename F>
auto stage(const char* name, F&& fn) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(name, e.what());
  }
}

std::string graph_tag(const AssetNetwork& net) {
  if (net.kind == NetworkKind::mst) return "mst";
  return "t" + format_double(net.threshold);
}

nlohmann::json top_nodes(const std::vector<std::string>& tickers,
                         const std::vector<double>& values, std::size_t count) {
  std::vector<std::size_t> order(tickers.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return tickers[a] < tickers[b];
  });
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t k = 0; k < std::min(count, order.size()); ++k)
    out.push_back({{"ticker", tickers[order[k]]}, {"value", values[order[k]]}});
  return out;
}

nlohmann::json top_nodes(const std::vector<std::string>& tickers,
                         const std::vector<int>& values, std::size_t count) {
  std::vector<double> as_double(values.begin(), values.end());
  return top_nodes(tickers, as_double, count);
}

}  // namespace

std::vector<double> default_thresholds() {
  return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
}

nlohmann::json run_pipeline(const PipelineConfig& config) {
  const PricePanel prices = stage("load-prices", [&] {
    return load_prices(config.prices_path);
  });
  const std::vector<AssetMeta> meta = stage("load-metadata", [&] {
    return config.metadata_path ? load_metadata(*config.metadata_path)
                                : std::vector<AssetMeta>{};
  });
  const ReturnPanel returns = stage("log-returns", [&] {
    return compute_log_returns(prices);
  });
  const CorrelationMatrix corr = stage("spearman", [&] {
    return spearman_correlation(returns);
  });
  const DistanceMatrix dist = stage("distance", [&] {
    return distance_from_correlation(corr);
  });
  const NoiseThreshold noise = stage("noise", [&] {
    return estimate_noise_threshold(returns, config.n_shuffles, config.seed);
  });

  std::vector<std::string> warnings;
  std::vector<AssetNetwork> graphs;
  graphs.push_back(stage("mst", [&] { return build_mst(dist, meta, noise); }));
  stage("sweep", [&] {
    for (double t : config.thresholds)
      if (t > 0.7)
        warnings.push_back("threshold " + format_double(t) +
                           " lies above 0.7; expect mostly spurious edges there");
    for (auto& net : threshold_sweep(dist, meta, config.thresholds, noise))
      graphs.push_back(std::move(net));
    return 0;
  });

  struct GraphAnalysis {
    std::string tag;
    CentralityReport report;
    DistributionTable histogram;
    CcdfSeries degree_ccdf;
  };
  std::vector<GraphAnalysis> analyses;
  stage("centrality", [&] {
    for (const AssetNetwork& net : graphs) {
      GraphAnalysis a;
      a.tag = graph_tag(net);
      a.report = compute_centrality_report(net, config.closeness_mode);
      a.histogram = degree_distribution(a.report.degree, 1);
      const std::vector<double> degrees(a.report.degree.begin(),
                                        a.report.degree.end());
      try {
        a.degree_ccdf = ccdf(degrees, config.ccdf_fit_quantiles);
      } catch (const std::exception& e) {
        a.degree_ccdf = ccdf(degrees);
        warnings.push_back("power-law fit skipped for " + a.tag + ": " + e.what());
      }
      analyses.push_back(std::move(a));
    }
    return 0;
  });

  const EmbeddingCoordinates embedding = stage("embedding", [&] {
    return pcoa_embedding(dist, 3);
  });
  for (const auto& w : embedding.warnings) warnings.push_back("embedding: " + w);

  std::vector<std::string> files;
  stage("export", [&] {
    std::filesystem::create_directories(config.out_dir);
    const auto emit = [&](const std::string& name, auto&& writer) {
      writer(config.out_dir / name);
      files.push_back(name);
    };
    emit("matrix_correlation.csv", [&](const std::filesystem::path& p) {
      write_matrix_csv(corr.tickers, corr.values, p);
    });
    emit("matrix_distance.csv", [&](const std::filesystem::path& p) {
      write_matrix_csv(dist.tickers, dist.values, p);
    });
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const std::string& tag = analyses[g].tag;
      emit("network_" + tag + ".json", [&](const std::filesystem::path& p) {
        export_network(graphs[g], NetworkFormat::json, p);
      });
      emit("network_" + tag + ".dot", [&](const std::filesystem::path& p) {
        export_network(graphs[g], NetworkFormat::dot, p);
      });
      emit("network_" + tag + ".graphml", [&](const std::filesystem::path& p) {
        export_network(graphs[g], NetworkFormat::graphml, p);
      });
      emit("edges_" + tag + ".csv", [&](const std::filesystem::path& p) {
        export_network(graphs[g], NetworkFormat::edge_csv, p);
      });
      emit("centrality_" + tag + ".csv", [&](const std::filesystem::path& p) {
        write_centrality_csv(analyses[g].report, p);
      });
      emit("histogram_" + tag + ".csv", [&](const std::filesystem::path& p) {
        write_distribution_csv(analyses[g].histogram, p);
      });
      emit("ccdf_" + tag + "_degree.tsv", [&](const std::filesystem::path& p) {
        write_ccdf_tsv(analyses[g].degree_ccdf, p);
      });
    }
    emit("embedding_pcoa.csv", [&](const std::filesystem::path& p) {
      write_embedding_csv(embedding, meta, p);
    });
    return 0;
  });

  return stage("manifest", [&] {
    nlohmann::json manifest;
    manifest["config"] = {
        {"prices", config.prices_path.string()},
        {"metadata",
         config.metadata_path ? nlohmann::json(config.metadata_path->string())
                              : nlohmann::json(nullptr)},
        {"thresholds", config.thresholds},
        {"n_shuffles", config.n_shuffles},
        {"seed", config.seed},
        {"closeness",
         config.closeness_mode == ClosenessMode::sum ? "sum" : "mean"},
        {"fit_quantiles",
         {config.ccdf_fit_quantiles.first, config.ccdf_fit_quantiles.second}},
        {"out_dir", config.out_dir.string()},
    };
    manifest["inputs"] = {
        {"n_assets", prices.tickers.size()},
        {"n_days", prices.dates.size()},
        {"n_returns", returns.returns.rows()},
        {"first_date", prices.dates.front()},
        {"last_date", prices.dates.back()},
    };
    manifest["noise"] = {
        {"mean", noise.mean},
        {"std", noise.std},
        {"n_shuffles", noise.n_shuffles},
        {"seed", noise.seed},
        {"statistic", noise.statistic},
    };
    manifest["graphs"] = nlohmann::json::array();
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const AssetNetwork& net = graphs[g];
      const CentralityReport& rep = analyses[g].report;
      nlohmann::json entry = {
          {"kind", net.kind == NetworkKind::mst ? "mst" : "asset-graph"},
          {"tag", analyses[g].tag},
          {"nodes", net.nodes.size()},
          {"edges", net.edges.size()},
      };
      if (net.kind == NetworkKind::asset_graph)
        entry["threshold"] = net.threshold;
      entry["top"] = {
          {"degree", top_nodes(rep.tickers, rep.degree, 4)},
          {"strength", top_nodes(rep.tickers, rep.strength, 4)},
          {"eigenvector", top_nodes(rep.tickers, rep.eigenvector, 4)},
          {"betweenness", top_nodes(rep.tickers, rep.betweenness, 4)},
          {"inv_closeness", top_nodes(rep.tickers, rep.inv_closeness, 4)},
          {"kshell", top_nodes(rep.tickers, rep.kshell, 4)},
      };
      if (analyses[g].degree_ccdf.fit) {
        const PowerLawFit& fit = *analyses[g].degree_ccdf.fit;
        entry["degree_powerlaw"] = {
            {"alpha", fit.alpha}, {"c", fit.c}, {"points", fit.points}};
      }
      manifest["graphs"].push_back(std::move(entry));
    }
    manifest["embedding"] = {
        {"eigenvalues", embedding.eigenvalues},
        {"negative_mass", embedding.negative_mass},
    };
    files.push_back("manifest_run.json");
    std::sort(files.begin(), files.end());
    manifest["files"] = files;
    manifest["warnings"] = warnings;

    std::ofstream out(config.out_dir / "manifest_run.json", std::ios::binary);
    if (!out)
      throw std::runtime_error("cannot write " +
                               (config.out_dir / "manifest_run.json").string());
    out << manifest.dump(2) << '\n';
    if (!out)
      throw std::runtime_error("failed writing " +
                               (config.out_dir / "manifest_run.json").string());
    return manifest;
  });
}

}  // namespace marketmap
