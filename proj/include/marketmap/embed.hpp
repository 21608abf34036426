#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

#include "marketmap/correl.hpp"
#include "marketmap/panel.hpp"

namespace marketmap {

struct EmbeddingCoordinates {
  std::vector<std::string> tickers;
  Eigen::MatrixXd coords;           // N x dims, column means 0
  std::vector<double> eigenvalues;  // top dims of the centered Gram matrix,
                                    // descending, before clamping
  double negative_mass = 0.0;       // sum |negative| / sum |all| eigenvalues
  std::vector<std::string> warnings;
};

/// Classical scaling (principal coordinates): square the distances,
/// double-center into B = -1/2 * H D2 H, eigendecompose, and scale the top
/// eigenvectors by sqrt(eigenvalue). Correlation distances need not be
/// Euclidean, so negative eigenvalues are clamped to zero and reported via
/// negative_mass. Eigenvalues at or below 1e-12 times the largest produce
/// zero columns plus a warning. Sign convention: the largest-magnitude entry
/// of each column is positive.
EmbeddingCoordinates pcoa_embedding(const DistanceMatrix& dist, int dims = 3);

/// CSV columns: ticker,sector,x,y,z (one coordinate column per dimension).
void write_embedding_csv(const EmbeddingCoordinates& emb,
                         const std::vector<AssetMeta>& meta,
                         const std::filesystem::path& path);

}  // namespace marketmap
