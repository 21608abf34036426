#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "marketmap/centrality.hpp"

namespace marketmap {

std::vector<double> default_thresholds();  // 0.1 ... 0.7 step 0.1

struct PipelineConfig {
  std::filesystem::path prices_path;
  std::optional<std::filesystem::path> metadata_path;
  std::vector<double> thresholds = default_thresholds();
  int n_shuffles = 1000;
  std::uint64_t seed = 0;
  ClosenessMode closeness_mode = ClosenessMode::sum;
  std::pair<double, double> ccdf_fit_quantiles{0.1, 0.9};
  std::filesystem::path out_dir;
};

/// Module errors surface with the pipeline stage that raised them, so a CLI
/// failure message reads "[spearman] ..." rather than a bare what().
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& message)
      : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Runs load -> returns -> Spearman -> distance -> noise threshold -> MST ->
/// threshold sweep -> per-graph centralities, histograms and CCDFs -> PCoA,
/// writing every export under config.out_dir plus a manifest that records
/// the config, the noise estimate, per-graph summaries (node/edge counts,
/// top-4 nodes per measure) and every file written. The manifest is returned
/// and is byte-identical across runs with identical config.
nlohmann::json run_pipeline(const PipelineConfig& config);

}  // namespace marketmap
