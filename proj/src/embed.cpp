#include "marketmap/embed.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
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

}  // namespace

EmbeddingCoordinates pcoa_embedding(const DistanceMatrix& dist, int dims) {
  const Eigen::Index n = dist.values.rows();
  if (dims < 1) fail("embedding needs at least one dimension");
  if (dist.values.cols() != n) fail("distance matrix must be square");
  if (static_cast<std::size_t>(n) != dist.tickers.size())
    fail("distance matrix shape does not match the ticker list");
  if (n <= dims)
    fail("embedding into " + std::to_string(dims) + " dimensions needs more than " +
         std::to_string(dims) + " assets, got " + std::to_string(n));
  if ((dist.values - dist.values.transpose().eval()).cwiseAbs().maxCoeff() != 0.0)
    fail("distance matrix must be exactly symmetric");
  if ((dist.values.diagonal().array() != 0.0).any())
    fail("distance matrix diagonal must be zero");

  // double centering: B = -1/2 H D^2 H expressed through row/column means
  const Eigen::MatrixXd d2 = dist.values.array().square();
  const Eigen::VectorXd row_mean = d2.rowwise().mean();
  const double grand_mean = d2.mean();
  Eigen::MatrixXd b(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      b(i, j) = -0.5 * (d2(i, j) - row_mean(i) - row_mean(j) + grand_mean);
  b = 0.5 * (b + b.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success)
    fail("eigendecomposition of the centered Gram matrix failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending

  EmbeddingCoordinates out;
  out.tickers = dist.tickers;
  out.coords = Eigen::MatrixXd::Zero(n, dims);

  double neg = 0.0, all = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    all += std::abs(evals(i));
    if (evals(i) < 0.0) neg += -evals(i);
  }
  out.negative_mass = all > 0.0 ? neg / all : 0.0;

  const double lambda_max = evals(n - 1);
  const double floor = 1e-12 * std::max(lambda_max, 0.0);
  for (int k = 0; k < dims; ++k) {
    const Eigen::Index idx = n - 1 - k;
    const double lambda = evals(idx);
    out.eigenvalues.push_back(lambda);
    if (lambda <= floor) {
      out.warnings.push_back("axis " + std::to_string(k + 1) +
                             " has eigenvalue " + format_double(lambda) +
                             "; emitting a zero column");
      continue;
    }
    Eigen::VectorXd col = solver.eigenvectors().col(idx) * std::sqrt(lambda);
    Eigen::Index arg = 0;
    col.cwiseAbs().maxCoeff(&arg);
    if (col(arg) < 0.0) col = -col;
    out.coords.col(k) = col;
  }
  return out;
}

void write_embedding_csv(const EmbeddingCoordinates& emb,
                         const std::vector<AssetMeta>& meta,
                         const std::filesystem::path& path) {
  std::map<std::string, const AssetMeta*> by_ticker;
  for (const auto& m : meta) by_ticker[m.ticker] = &m;

  std::ofstream out(path, std::ios::binary);
  if (!out) fail("cannot write " + path.string());
  out << "ticker,sector";
  static const char* axis[] = {"x", "y", "z"};
  for (Eigen::Index k = 0; k < emb.coords.cols(); ++k) {
    if (k < 3)
      out << ',' << axis[k];
    else
      out << ",dim" << (k + 1);
  }
  out << '\n';
  for (Eigen::Index i = 0; i < emb.coords.rows(); ++i) {
    const auto& ticker = emb.tickers[static_cast<std::size_t>(i)];
    const auto it = by_ticker.find(ticker);
    out << quote_field(ticker) << ','
        << quote_field(it == by_ticker.end() ? "" : it->second->sector);
    for (Eigen::Index k = 0; k < emb.coords.cols(); ++k)
      out << ',' << format_double(emb.coords(i, k));
    out << '\n';
  }
  if (!out) fail("failed writing " + path.string());
}

}  // namespace marketmap
