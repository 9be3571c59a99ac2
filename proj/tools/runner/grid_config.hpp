#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtcorr/adjust.hpp"
#include "mtcorr/cohort.hpp"
#include "mtcorr/metrics.hpp"
#include "mtcorr/study.hpp"

namespace mtc::runner {

// Schema violation in a study config; key() names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// A simulation grid: every (sample size, biomarker count, positive rate)
// combination is one cell.
struct GridConfig {
  std::vector<std::size_t> sample_sizes;
  std::vector<std::size_t> biomarker_counts;
  std::vector<double> positive_rates;
  double alpha = 0.05;
  double bea_beta = 0.8;
  double baseline_power = 0.8;
  std::size_t replicates = 100;
  simulate::GeneratorMode generator_mode = simulate::GeneratorMode::data_driven;
  double label_probability = 0.5;
  adjust::CapPolicy cap_policy = adjust::CapPolicy::cap_at_alpha;
  std::vector<adjust::Method> methods{std::begin(adjust::kAllMethods),
                                      std::end(adjust::kAllMethods)};
  std::uint64_t master_seed = 20240101;
  double prevalence = 0.5;
  std::optional<double> effect_size;
  double direct_p_shape = 0.15;

  // Grid order: sample size, then biomarker count, then rate.
  std::vector<metrics::CellKey> cells() const;
  simulate::StudyConfig study_for(const metrics::CellKey& cell) const;
};

GridConfig parse_grid_config(const nlohmann::json& doc);

// Fully resolved config with every key present; canonical (sorted keys).
nlohmann::json to_json(const GridConfig& config);

// FNV-1a-64 of the tool version and the canonical config, as 16 hex digits.
std::string manifest_hash(const GridConfig& config);

}  // namespace mtc::runner
