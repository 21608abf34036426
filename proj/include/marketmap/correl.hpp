#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "marketmap/panel.hpp"

namespace marketmap {

struct CorrelationMatrix {
  std::vector<std::string> tickers;
  Eigen::MatrixXd values;  // symmetric, diagonal exactly 1, entries in [-1, 1]
};

struct DistanceMatrix {
  std::vector<std::string> tickers;
  Eigen::MatrixXd values;  // 1 - c, symmetric, diagonal exactly 0, in [0, 2]
};

/// Monte-Carlo estimate of the distance floor below which a pair of shuffled
/// (hence independent) series would still land by chance.
struct NoiseThreshold {
  double mean = 0.0;
  double std = 0.0;  // population deviation over the replicates
  int n_shuffles = 0;
  std::uint64_t seed = 0;
  std::string statistic = "min-offdiagonal-distance";
};

/// Fractional ranks of xs, 1-based; tied values receive the average of the
/// ranks they span.
std::vector<double> average_ranks(const std::vector<double>& xs);

/// Pearson correlation of the rank-transformed series. Requires at least
/// three observations; a constant series has no rank variance and raises an
/// error naming its ticker.
CorrelationMatrix spearman_correlation(const ReturnPanel& panel);

DistanceMatrix distance_from_correlation(const CorrelationMatrix& corr);

/// For each replicate, independently permutes every asset's return series
/// (Fisher-Yates, one RNG stream per (seed, replicate, asset)) and records
/// the minimum off-diagonal entry of the shuffled distance matrix. The
/// result is the mean and standard deviation of that statistic, identical
/// for identical (panel, n_shuffles, seed) however the work is scheduled.
NoiseThreshold estimate_noise_threshold(const ReturnPanel& panel,
                                        int n_shuffles, std::uint64_t seed);

/// Square matrix CSV with the ticker list as header row and leading column.
void write_matrix_csv(const std::vector<std::string>& tickers,
                      const Eigen::MatrixXd& values,
                      const std::filesystem::path& path);

}  // namespace marketmap
