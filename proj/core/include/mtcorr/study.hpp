#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtcorr/adjust.hpp"
#include "mtcorr/cohort.hpp"
#include "mtcorr/metrics.hpp"

namespace mtc::simulate {

struct StudyConfig {
  CohortConfig cohort;
  double alpha = 0.05;
  double bea_beta = 0.8;
  std::size_t replicates = 100;
  std::vector<adjust::Method> methods{std::begin(adjust::kAllMethods),
                                      std::end(adjust::kAllMethods)};
  adjust::CapPolicy cap_policy = adjust::CapPolicy::cap_at_alpha;
  double label_probability = 0.5;
  // Design power at alpha for the power mapping.
  double baseline_power = 0.8;

  void validate() const;
  metrics::CellKey cell() const;
};

struct ReplicateError {
  std::size_t replicate = 0;
  std::string message;
};

struct ReplicateResults {
  metrics::CellKey cell;
  std::size_t replicates_requested = 0;
  // Ordered by replicate, then by the study's method order.
  std::vector<metrics::ReplicateRecord> records;
  std::vector<ReplicateError> errors;
  std::optional<Calibration> calibration;
};

/// Seed of one grid cell, derived from the study seed and the cell's
/// coordinates so that cells are independent of grid order.
std::uint64_t cell_seed(std::uint64_t master_seed, const metrics::CellKey& cell);

/// Records for replicate r given a cohort that is already calibrated.
/// Depends only on (study, cohort, r).
std::vector<metrics::ReplicateRecord> run_replicate(const StudyConfig& study,
                                                    const CohortConfig& cohort,
                                                    std::size_t replicate);

/// Runs every replicate of one cell. Replicates are spread over `threads`
/// workers (0 picks the hardware concurrency); the output is identical to
/// a sequential run. Per-replicate failures are collected; more than 5% of
/// replicates failing (including a failed calibration) throws
/// SimulationQualityError.
ReplicateResults run_study(const StudyConfig& study, unsigned threads = 0);

}  // namespace mtc::simulate
