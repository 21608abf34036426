#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace marketmap {

/// Daily closing prices, one row per date and one column per ticker.
/// Completeness is enforced at load time: every cell must hold a strictly
/// positive price, so downstream code never deals with missing data.
struct PricePanel {
  std::vector<std::string> dates;    // ISO-8601, strictly increasing
  std::vector<std::string> tickers;  // unique, in file column order
  Eigen::MatrixXd prices;            // dates.size() x tickers.size()
};

struct AssetMeta {
  std::string ticker;
  std::string company;
  std::string sector;
};

/// Log-return panel derived from a PricePanel; one row fewer.
struct ReturnPanel {
  std::vector<std::string> tickers;
  Eigen::MatrixXd returns;
};

/// One block of the synthetic factor model: `size` assets sharing a sector
/// factor with weight `loading`.
struct SectorSpec {
  std::string label;
  int size = 0;
  double loading = 0.0;
};

struct SyntheticPanel {
  PricePanel prices;
  std::vector<AssetMeta> meta;
};

/// Reads a wide CSV with header "date,TICKER1,...". Throws std::runtime_error
/// naming the offending row/column on nonpositive or unparseable prices,
/// duplicate tickers, non-increasing dates, or ragged rows.
PricePanel load_prices(const std::filesystem::path& path);

/// Writes the panel back out in the same wide format, with enough digits
/// that load_prices recovers the values exactly.
void write_prices(const PricePanel& panel, const std::filesystem::path& path);

/// Reads "ticker,company,sector" rows. Ticker and sector must be nonempty;
/// tickers that never appear in a price panel are fine, the join happens later.
std::vector<AssetMeta> load_metadata(const std::filesystem::path& path);

void write_metadata(const std::vector<AssetMeta>& meta,
                    const std::filesystem::path& path);

/// returns[t][i] = ln(P[t+1][i]) - ln(P[t][i]). Needs at least two rows.
ReturnPanel compute_log_returns(const PricePanel& panel);

/// Deterministic test-data factory. Each asset's daily return is
///   market_loading * F_t + loading_s * G_{s,t} + residual_i * eps_{i,t}
/// with independent standard normal factors and residual_i chosen so the
/// return has unit variance; returns are exponentiated into prices starting
/// at 100. Sector sizes must sum to n_assets and the combined factor
/// variance must stay below 1. Output depends only on the arguments.
SyntheticPanel generate_synthetic_panel(int n_assets, int n_days,
                                        const std::vector<SectorSpec>& sectors,
                                        double market_loading,
                                        std::uint64_t seed);

}  // namespace marketmap
