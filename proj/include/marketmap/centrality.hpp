#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "marketmap/netgraph.hpp"

namespace marketmap {

/// Number of incident edges per node; isolated nodes get 0.
std::vector<int> node_degree(const AssetNetwork& net);

/// Sum of the correlation weights on each node's incident edges, every
/// incident edge counted once.
std::vector<double> node_strength(const AssetNetwork& net);

struct EigenvectorCentrality {
  std::vector<double> weights;  // entries >= 0, L2 norm 1
  double eigenvalue = 0.0;      // Rayleigh quotient at convergence
  int iterations = 0;
};

/// Dominant eigenvector of the 0/1 adjacency matrix by power iteration from
/// the uniform positive vector, converged when ||Ax - lambda*x||_2 <= tol
/// with lambda the Rayleigh quotient. On disconnected graphs the weight
/// collapses onto the spectrally dominant component and every other node
/// reads 0. Throws on an edgeless graph or when max_iter is exhausted.
EigenvectorCentrality eigenvector_centrality(const AssetNetwork& net,
                                             double tol = 1e-10,
                                             int max_iter = 10000);

/// B(k) = sum over ordered pairs (i,j), all three distinct, of the fraction
/// of hop-count shortest i-j paths passing through k. Unreachable pairs
/// contribute 0.
std::vector<double> betweenness_centrality(const AssetNetwork& net);

enum class ClosenessMode { sum, mean };

struct ClosenessCentrality {
  std::vector<double> lengths;  // l_i, 0 for isolated nodes
  std::vector<double> inverse;  // C_c = 1/l_i, 0 when l_i is 0
};

/// Geodesics weighted by edge distance. mode::sum takes l_i as the plain sum
/// of distances to all reachable nodes; mode::mean divides that sum by the
/// node count.
ClosenessCentrality closeness_centrality(const AssetNetwork& net,
                                         ClosenessMode mode = ClosenessMode::sum);

/// Iterative peeling: at stage k all nodes of current degree <= k are
/// removed (cascading) and assigned shell k. Equals the standard k-core
/// index; isolated nodes get shell 0.
std::vector<int> k_shell_decomposition(const AssetNetwork& net);

struct DistributionTable {
  std::vector<int> lower_edges;  // bins [b, b + bin_width)
  std::vector<int> frequencies;
};

/// Histogram of the degree list. Every bin from the lowest occupied to the
/// highest occupied lower edge is listed, including empty ones in between.
DistributionTable degree_distribution(const std::vector<int>& degrees,
                                      int bin_width);

struct PowerLawFit {
  double alpha = 0.0;  // P(X >= x) ~ c * x^-alpha
  double c = 0.0;
  double q_lo = 0.0;   // quantile range requested
  double q_hi = 0.0;
  double x_lo = 0.0;   // value range actually fitted
  double x_hi = 0.0;
  int points = 0;      // distinct values entering the regression
};

struct CcdfSeries {
  std::vector<double> values;         // distinct, ascending
  std::vector<double> probabilities;  // P(X >= value); starts at exactly 1
  std::optional<PowerLawFit> fit;
};

/// Empirical complementary cumulative distribution at each distinct value.
/// When fit_quantiles is given, fits log10 P against log10 x by least
/// squares over the strictly positive values between the two quantiles.
CcdfSeries ccdf(const std::vector<double>& values,
                const std::optional<std::pair<double, double>>& fit_quantiles =
                    std::nullopt);

/// (shell index, degree) per node, sorted by shell.
std::vector<std::pair<int, int>> degree_vs_kshell(const AssetNetwork& net);

/// All measures side by side for one network, ready for CSV export.
struct CentralityReport {
  std::vector<std::string> tickers;
  std::vector<std::string> sectors;
  std::vector<int> degree;
  std::vector<double> strength;
  std::vector<double> eigenvector;  // all zero when the graph has no edges
  std::vector<double> betweenness;
  std::vector<double> closeness_len;
  std::vector<double> inv_closeness;
  std::vector<int> kshell;
  ClosenessMode closeness_mode = ClosenessMode::sum;
};

CentralityReport compute_centrality_report(const AssetNetwork& net,
                                           ClosenessMode mode = ClosenessMode::sum,
                                           double eig_tol = 1e-10,
                                           int eig_max_iter = 10000);

/// CSV columns: ticker,sector,degree,strength,eigenvector,betweenness,
/// closeness_len,inv_closeness,kshell.
void write_centrality_csv(const CentralityReport& report,
                          const std::filesystem::path& path);

/// Two tab-separated columns (value, ccdf), ready for log-log plotting.
void write_ccdf_tsv(const CcdfSeries& series, const std::filesystem::path& path);

void write_distribution_csv(const DistributionTable& table,
                            const std::filesystem::path& path);

}  // namespace marketmap
