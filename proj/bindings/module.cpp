#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "marketmap/centrality.hpp"
#include "marketmap/correl.hpp"
#include "marketmap/embed.hpp"
#include "marketmap/netgraph.hpp"
#include "marketmap/panel.hpp"
#include "marketmap/pipeline.hpp"

namespace py = pybind11;
using namespace marketmap;

namespace {

std::vector<std::string> numbered_tickers(Eigen::Index n) {
  std::vector<std::string> tickers;
  for (Eigen::Index i = 0; i < n; ++i)
    tickers.push_back("A" + std::to_string(i + 1));
  return tickers;
}

ReturnPanel panel_from_matrix(const Eigen::MatrixXd& returns) {
  ReturnPanel p;
  p.tickers = numbered_tickers(returns.cols());
  p.returns = returns;
  return p;
}

DistanceMatrix distance_from_matrix(const Eigen::MatrixXd& values) {
  DistanceMatrix d;
  d.tickers = numbered_tickers(values.rows());
  d.values = values;
  return d;
}

// Bindings reuse the CSV writers via a scratch file so the text matches the
// CLI output byte for byte.
std::string slurp_and_remove(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::filesystem::remove(p);
  return ss.str();
}

py::object json_to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "correlation networks from asset price panels";
  m.attr("__version__") = "0.1.0";

  m.def(
      "log_returns",
      [](const Eigen::MatrixXd& prices) {
        PricePanel panel;
        panel.tickers = numbered_tickers(prices.cols());
        for (Eigen::Index t = 0; t < prices.rows(); ++t)
          panel.dates.push_back("r" + std::to_string(t));
        panel.prices = prices;
        return compute_log_returns(panel).returns;
      },
      py::arg("prices"),
      "Row-to-row log returns of a price matrix (rows are days).");

  m.def(
      "spearman",
      [](const Eigen::MatrixXd& returns) {
        return spearman_correlation(panel_from_matrix(returns)).values;
      },
      py::arg("returns"), "Spearman correlation matrix of the columns.");

  m.def(
      "distance",
      [](const Eigen::MatrixXd& corr) {
        if (corr.rows() != corr.cols())
          throw std::invalid_argument("correlation matrix must be square");
        CorrelationMatrix c;
        c.tickers = numbered_tickers(corr.rows());
        c.values = corr;
        return distance_from_correlation(c).values;
      },
      py::arg("correlation"), "Distance matrix 1 - c.");

  m.def(
      "noise_threshold",
      [](const Eigen::MatrixXd& returns, int n_shuffles, std::uint64_t seed) {
        const NoiseThreshold noise =
            estimate_noise_threshold(panel_from_matrix(returns), n_shuffles, seed);
        py::dict out;
        out["mean"] = noise.mean;
        out["std"] = noise.std;
        out["n_shuffles"] = noise.n_shuffles;
        out["seed"] = noise.seed;
        out["statistic"] = noise.statistic;
        return out;
      },
      py::arg("returns"), py::arg("n_shuffles") = 1000, py::arg("seed") = 0,
      "Shuffle-noise floor of the distance matrix.");

  m.def(
      "mst_edges",
      [](const Eigen::MatrixXd& dist) {
        const AssetNetwork mst = build_mst(distance_from_matrix(dist), {});
        py::list edges;
        for (const auto& e : mst.edges) {
          py::dict d;
          d["i"] = e.i;
          d["j"] = e.j;
          d["distance"] = e.distance;
          d["correlation"] = e.correlation;
          d["random"] = e.random_flag;
          edges.append(d);
        }
        return edges;
      },
      py::arg("distance"), "Minimum-spanning-tree edges of a distance matrix.");

  m.def(
      "k_shell",
      [](const Eigen::MatrixXd& dist, double threshold) {
        return k_shell_decomposition(
            build_asset_graph(distance_from_matrix(dist), {}, threshold));
      },
      py::arg("distance"), py::arg("threshold"),
      "Shell index per node of the asset graph at the given threshold.");

  m.def(
      "eigenvector",
      [](const Eigen::MatrixXd& dist, double threshold) {
        return eigenvector_centrality(
                   build_asset_graph(distance_from_matrix(dist), {}, threshold))
            .weights;
      },
      py::arg("distance"), py::arg("threshold"),
      "Eigenvector centrality on the asset graph at the given threshold.");

  m.def(
      "pcoa",
      [](const Eigen::MatrixXd& dist, int dims) {
        return pcoa_embedding(distance_from_matrix(dist), dims).coords;
      },
      py::arg("distance"), py::arg("dims") = 3,
      "Principal-coordinate embedding of a distance matrix.");

  m.def(
      "synthetic_panel",
      [](int n_assets, int n_days,
         const std::vector<std::tuple<std::string, int, double>>& sectors,
         double market_loading, std::uint64_t seed) {
        std::vector<SectorSpec> specs;
        for (const auto& [label, size, loading] : sectors)
          specs.push_back({label, size, loading});
        const SyntheticPanel panel = generate_synthetic_panel(
            n_assets, n_days, specs, market_loading, seed);
        const auto dir = std::filesystem::temp_directory_path();
        const auto tag = std::to_string(::getpid());
        const auto prices_path = dir / ("marketmap_prices_" + tag + ".csv");
        const auto meta_path = dir / ("marketmap_meta_" + tag + ".csv");
        write_prices(panel.prices, prices_path);
        write_metadata(panel.meta, meta_path);
        return py::make_tuple(slurp_and_remove(prices_path),
                              slurp_and_remove(meta_path));
      },
      py::arg("n_assets"), py::arg("n_days"), py::arg("sectors"),
      py::arg("market_loading") = 0.0, py::arg("seed") = 0,
      "Synthetic sectored panel as (prices_csv, metadata_csv) text.");

  m.def(
      "run_pipeline",
      [](const std::filesystem::path& prices,
         const std::filesystem::path& out_dir,
         const std::optional<std::filesystem::path>& metadata,
         const std::optional<std::vector<double>>& thresholds, int n_shuffles,
         std::uint64_t seed, const std::string& closeness,
         const std::pair<double, double>& fit_quantiles) {
        PipelineConfig config;
        config.prices_path = prices;
        config.metadata_path = metadata;
        if (thresholds) config.thresholds = *thresholds;
        config.n_shuffles = n_shuffles;
        config.seed = seed;
        if (closeness != "sum" && closeness != "mean")
          throw std::invalid_argument("closeness must be 'sum' or 'mean'");
        config.closeness_mode =
            closeness == "mean" ? ClosenessMode::mean : ClosenessMode::sum;
        config.ccdf_fit_quantiles = fit_quantiles;
        config.out_dir = out_dir;
        return json_to_python(run_pipeline(config));
      },
      py::arg("prices"), py::arg("out_dir"), py::arg("metadata") = std::nullopt,
      py::arg("thresholds") = std::nullopt, py::arg("n_shuffles") = 1000,
      py::arg("seed") = 0, py::arg("closeness") = "sum",
      py::arg("fit_quantiles") = std::make_pair(0.1, 0.9),
      "Full pipeline; returns the manifest as a dict.");
}
