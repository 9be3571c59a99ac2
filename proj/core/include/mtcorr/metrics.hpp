#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mtcorr/adjust.hpp"
#include "mtcorr/labels.hpp"

namespace mtc::metrics {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

ConfusionCounts confusion(const simulate::TruthLabels& labels,
                          const std::vector<bool>& rejected);

// nullopt when the relevant class is empty.
std::optional<double> sensitivity(const ConfusionCounts& c);
std::optional<double> specificity(const ConfusionCounts& c);

// Two-sided normal-approximation design at (alpha0, power0):
//   z(1 - alpha0/2) + z(power0) = C.
// Holding C fixed, a corrected level alpha maps to power
//   Phi(C - z(1 - alpha/2)).
class PowerBaseline {
 public:
  explicit PowerBaseline(double alpha0 = 0.05, double power0 = 0.8);

  double alpha0() const { return alpha0_; }
  double power0() const { return power0_; }
  double design_constant() const { return constant_; }

 private:
  double alpha0_;
  double power0_;
  double constant_;
};

double power_from_alpha(double effective_alpha, const PowerBaseline& baseline);

// Identifies one grid cell of a study.
struct CellKey {
  std::size_t sample_size = 0;
  std::size_t m_biomarkers = 0;
  double positive_rate = 0.0;

  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct ReplicateRecord {
  CellKey cell;
  std::size_t replicate = 0;
  adjust::Method method = adjust::Method::bonferroni;
  ConfusionCounts counts;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  double power = 0.0;
  double effective_alpha = 0.0;
  std::optional<double> m2;  // BEA only
  std::size_t n_significant = 0;
  std::size_t warnings = 0;
};

struct MetricSummary {
  std::optional<double> mean;
  double sd = 0.0;  // sample sd; 0 with fewer than two values
  std::size_t used = 0;
  std::size_t skipped = 0;
};

struct SummaryRow {
  adjust::Method method = adjust::Method::bonferroni;
  CellKey cell;
  MetricSummary sensitivity;
  MetricSummary specificity;
  MetricSummary power;
  std::optional<double> mean_effective_alpha;
  std::optional<double> mean_m2;
  std::size_t replicates_used = 0;
  std::size_t warnings = 0;
  bool missing = false;
};

struct StudySummary {
  // Ordered by cell, then method in kAllMethods order.
  std::vector<SummaryRow> rows;

  const SummaryRow* find(adjust::Method method, const CellKey& cell) const;
};

MetricSummary summarize(std::span<const std::optional<double>> values);

/// Per (cell, method) means and sample sds, skipping undefined values.
/// Cells listed in expected_cells (crossed with expected_methods, or the
/// methods seen when that is empty) that have no records produce a row
/// with missing = true.
StudySummary aggregate(std::span<const ReplicateRecord> records,
                       std::span<const CellKey> expected_cells = {},
                       std::span<const adjust::Method> expected_methods = {});

}  // namespace mtc::metrics
