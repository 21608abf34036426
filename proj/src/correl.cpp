#include "marketmap/correl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <span>
#include <stdexcept>

#include "marketmap/rng.hpp"

namespace marketmap {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

// Standardizes a rank column to zero mean and unit norm so correlations
// reduce to plain dot products. Returns false when the column is constant.
bool standardize(std::span<const double> ranks, std::span<double> out) {
  const std::size_t t = ranks.size();
  double mean = 0.0;
  for (double r : ranks) mean += r;
  mean /= static_cast<double>(t);
  double ss = 0.0;
  for (std::size_t k = 0; k < t; ++k) {
    out[k] = ranks[k] - mean;
    ss += out[k] * out[k];
  }
  if (ss <= 0.0) return false;
  const double inv = 1.0 / std::sqrt(ss);
  for (std::size_t k = 0; k < t; ++k) out[k] *= inv;
  return true;
}

double clamp_unit(double x) { return std::min(1.0, std::max(-1.0, x)); }

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
    // tied block spans 1-based ranks i+1 .. j+1
    const double avg = static_cast<double>(i + j + 2) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

CorrelationMatrix spearman_correlation(const ReturnPanel& panel) {
  const Eigen::Index t = panel.returns.rows();
  const Eigen::Index n = panel.returns.cols();
  if (static_cast<std::size_t>(n) != panel.tickers.size())
    fail("ticker list does not match the return panel width");
  if (t < 3)
    fail("Spearman correlation needs at least 3 observations, got " +
         std::to_string(t));

  // rank each column once, then correlate the standardized ranks
  Eigen::MatrixXd z(t, n);
  std::vector<double> col(static_cast<std::size_t>(t));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < t; ++k) col[static_cast<std::size_t>(k)] = panel.returns(k, j);
    const std::vector<double> ranks = average_ranks(col);
    std::vector<double> zr(ranks.size());
    if (!standardize(ranks, zr))
      fail("series '" + panel.tickers[static_cast<std::size_t>(j)] +
           "' is constant; its ranks carry no information");
    for (Eigen::Index k = 0; k < t; ++k) z(k, j) = zr[static_cast<std::size_t>(k)];
  }

  CorrelationMatrix c;
  c.tickers = panel.tickers;
  c.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    c.values(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double r = clamp_unit(z.col(i).dot(z.col(j)));
      c.values(i, j) = r;
      c.values(j, i) = r;
    }
  }
  return c;
}

DistanceMatrix distance_from_correlation(const CorrelationMatrix& corr) {
  DistanceMatrix d;
  d.tickers = corr.tickers;
  d.values = (1.0 - corr.values.array()).matrix();
  d.values.diagonal().setZero();
  return d;
}

NoiseThreshold estimate_noise_threshold(const ReturnPanel& panel,
                                        int n_shuffles, std::uint64_t seed) {
  if (n_shuffles < 1)
    fail("noise estimation needs at least one shuffle replicate");
  const Eigen::Index t = panel.returns.rows();
  const Eigen::Index n = panel.returns.cols();
  if (n < 2) fail("noise estimation needs at least two assets");
  if (t < 3)
    fail("noise estimation needs at least 3 observations, got " +
         std::to_string(t));

  // Ranks are invariant under permutation followed by re-ranking, so each
  // replicate can permute the precomputed rank columns directly.
  std::vector<std::vector<double>> base_ranks(static_cast<std::size_t>(n));
  std::vector<double> col(static_cast<std::size_t>(t));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < t; ++k)
      col[static_cast<std::size_t>(k)] = panel.returns(k, j);
    base_ranks[static_cast<std::size_t>(j)] = average_ranks(col);
    std::vector<double> probe(col.size());
    if (!standardize(base_ranks[static_cast<std::size_t>(j)], probe))
      fail("series '" + panel.tickers[static_cast<std::size_t>(j)] +
           "' is constant; its ranks carry no information");
  }

  double sum = 0.0, sumsq = 0.0;
  Eigen::MatrixXd z(t, n);
  std::vector<double> ranks(static_cast<std::size_t>(t));
  std::vector<double> zr(static_cast<std::size_t>(t));
  for (int rep = 0; rep < n_shuffles; ++rep) {
    for (Eigen::Index j = 0; j < n; ++j) {
      ranks = base_ranks[static_cast<std::size_t>(j)];
      rng::SplitMix64 g = rng::derive_stream(
          seed, {static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(j)});
      rng::shuffle(std::span<double>(ranks), g);
      standardize(ranks, zr);
      for (Eigen::Index k = 0; k < t; ++k)
        z(k, j) = zr[static_cast<std::size_t>(k)];
    }
    double max_corr = -2.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j)
        max_corr = std::max(max_corr, clamp_unit(z.col(i).dot(z.col(j))));
    const double stat = 1.0 - max_corr;  // minimum off-diagonal distance
    sum += stat;
    sumsq += stat * stat;
  }

  NoiseThreshold out;
  out.n_shuffles = n_shuffles;
  out.seed = seed;
  out.mean = sum / n_shuffles;
  const double var = std::max(0.0, sumsq / n_shuffles - out.mean * out.mean);
  out.std = std::sqrt(var);
  return out;
}

void write_matrix_csv(const std::vector<std::string>& tickers,
                      const Eigen::MatrixXd& values,
                      const std::filesystem::path& path) {
  if (values.rows() != values.cols() ||
      static_cast<std::size_t>(values.rows()) != tickers.size())
    fail("matrix shape does not match the ticker list");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << "ticker";
  for (const auto& t : tickers) out << ',' << t;
  out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    out << tickers[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < values.cols(); ++j)
      out << ',' << format_double(values(i, j));
    out << '\n';
  }
  if (!out) fail("failed writing " + path.string());
}

}  // namespace marketmap
