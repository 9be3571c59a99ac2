#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtcorr/adjust.hpp"
#include "mtcorr/random.hpp"

namespace mtc::simulate {

enum class GeneratorMode { data_driven, direct_p };

std::string to_string(GeneratorMode mode);

struct CohortConfig {
  std::size_t n_patients = 1000;
  std::size_t m_biomarkers = 1000;
  double target_positive_rate = 0.3;
  double prevalence = 0.5;
  // Mean shift of associated biomarkers in diseased patients (unit variance).
  // Unset: the shift at which one biomarker test has design_power at
  // design_alpha for this cohort size (see design_effect_size).
  std::optional<double> effect_size;
  double design_power = 0.8;
  double design_alpha = 0.05;
  GeneratorMode generator_mode = GeneratorMode::data_driven;
  double direct_p_shape = 0.15;
  std::uint64_t master_seed = 0;
  // Share of biomarkers carrying an effect; set by calibrate_positive_rate.
  double associated_fraction = 0.0;

  void validate() const;
  double resolved_effect_size() const;
};

// Patients x biomarkers, stored column-major so that each biomarker is a
// contiguous span.
class ExpressionMatrix {
 public:
  ExpressionMatrix() = default;
  ExpressionMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<double> column(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }
  double operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  friend bool operator==(const ExpressionMatrix&, const ExpressionMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct CohortDataset {
  std::vector<std::uint8_t> disease_status;
  ExpressionMatrix expression;
  std::vector<std::uint8_t> truly_associated;
};

/// Disease status ~ Bernoulli(prevalence), redrawn up to 10 times when a
/// single class comes out. round(associated_fraction * m) biomarkers at
/// random positions follow Normal(effect_size, 1) in diseased patients;
/// every other value is Normal(0, 1). Deterministic in
/// (master_seed, replicate_index).
CohortDataset generate_cohort(const CohortConfig& config, std::size_t replicate_index);

CohortDataset generate_cohort(const CohortConfig& config, numerics::RandomStream stream);

// Per-biomarker Wald p-values plus counters for the fallbacks applied.
struct MarkerScan {
  adjust::PValueBatch batch;
  std::size_t separation_warnings = 0;   // non-converged fits recorded as p = 0
  std::size_t degenerate_covariates = 0; // constant columns recorded as p = 1

  std::size_t warnings() const { return separation_warnings + degenerate_covariates; }
};

MarkerScan compute_pvalues(const CohortDataset& dataset);

/// Exactly round(rate * m) p-values alpha * U^(1 / shape) and the rest
/// Uniform(alpha, 1), in shuffled positions.
adjust::PValueBatch direct_p_generate(const CohortConfig& config,
                                      std::size_t replicate_index,
                                      double alpha = 0.05);

/// Two-sided level-alpha power of a two-sample z test for a mean shift of
/// effect_size between n * prevalence diseased and n * (1 - prevalence)
/// healthy patients with unit variance.
double analytic_marker_power(double effect_size, std::size_t n_patients,
                             double prevalence, double alpha);

/// Mean shift giving a two-sided level-alpha two-sample z test the stated
/// power: (z(1 - alpha/2) + z(power)) * sqrt(1/n_cases + 1/n_controls).
double design_effect_size(double power, std::size_t n_patients, double prevalence,
                          double alpha);

/// f solving target = f * power + (1 - f) * alpha, clamped to [0, 1].
double solve_associated_fraction(double target_rate, double marker_power, double alpha);

struct Calibration {
  double associated_fraction = 0.0;
  double effect_size = 0.0;
  double analytic_power = 0.0;
  double pilot_rate = 0.0;
  int effect_steps = 0;  // number of +0.1 effect-size increments taken
};

struct CalibrationOptions {
  double alpha = 0.05;
  std::size_t pilot_replicates = 20;
  double tolerance = 0.03;
  double effect_step = 0.1;
  int max_steps = 10;
};

/// Picks the associated fraction that gives the configured positive rate,
/// then checks it on a pilot run; raises the effect size by effect_step
/// while the pilot misses. Throws CalibrationError when the budget runs out.
Calibration calibrate_positive_rate(const CohortConfig& config,
                                    CalibrationOptions options = {});

}  // namespace mtc::simulate
