#include "mtcorr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "mtcorr/errors.hpp"
#include "mtcorr/normal.hpp"

namespace mtc::metrics {

ConfusionCounts confusion(const simulate::TruthLabels& labels,
                          const std::vector<bool>& rejected) {
  if (labels.size() != rejected.size()) {
    throw ContractError("confusion: labels and decisions differ in length");
  }
  ConfusionCounts c;
  for (std::size_t i = 0; i < rejected.size(); ++i) {
    const bool positive = labels.is_true_positive[i] != 0;
    if (positive) {
      rejected[i] ? ++c.tp : ++c.fn;
    } else {
      rejected[i] ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

std::optional<double> sensitivity(const ConfusionCounts& c) {
  if (c.tp + c.fn == 0) return std::nullopt;
  return static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
}

std::optional<double> specificity(const ConfusionCounts& c) {
  if (c.tn + c.fp == 0) return std::nullopt;
  return static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
}

PowerBaseline::PowerBaseline(double alpha0, double power0)
    : alpha0_(alpha0), power0_(power0) {
  if (!(alpha0 > 0.0 && alpha0 < 1.0)) throw DomainError("PowerBaseline: alpha0 must lie in (0, 1)");
  if (!(power0 > 0.0 && power0 < 1.0)) throw DomainError("PowerBaseline: power0 must lie in (0, 1)");
  constant_ = numerics::std_normal_upper_quantile(alpha0 / 2.0) +
              numerics::std_normal_quantile(power0);
}

double power_from_alpha(double effective_alpha, const PowerBaseline& baseline) {
  if (!(effective_alpha > 0.0 && effective_alpha <= 1.0)) {
    throw DomainError("power_from_alpha: effective_alpha must lie in (0, 1]");
  }
  const double critical = numerics::std_normal_upper_quantile(effective_alpha / 2.0);
  const double power = numerics::std_normal_cdf(baseline.design_constant() - critical);
  return std::clamp(power, std::numeric_limits<double>::min(),
                    std::nextafter(1.0, 0.0));
}

const SummaryRow* StudySummary::find(adjust::Method method, const CellKey& cell) const {
  for (const auto& row : rows) {
    if (row.method == method && row.cell == cell) return &row;
  }
  return nullptr;
}

MetricSummary summarize(std::span<const std::optional<double>> values) {
  MetricSummary s;
  double sum = 0.0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++s.used;
    } else {
      ++s.skipped;
    }
  }
  if (s.used == 0) return s;
  const double mean = sum / static_cast<double>(s.used);
  s.mean = mean;
  if (s.used > 1) {
    double ss = 0.0;
    for (const auto& v : values) {
      if (v) ss += (*v - mean) * (*v - mean);
    }
    s.sd = std::sqrt(ss / static_cast<double>(s.used - 1));
  }
  return s;
}

namespace {

std::size_t method_rank(adjust::Method m) {
  for (std::size_t i = 0; i < std::size(adjust::kAllMethods); ++i) {
    if (adjust::kAllMethods[i] == m) return i;
  }
  return std::size(adjust::kAllMethods);
}

std::optional<double> mean_of(std::span<const double> v) {
  if (v.empty()) return std::nullopt;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

StudySummary aggregate(std::span<const ReplicateRecord> records,
                       std::span<const CellKey> expected_cells,
                       std::span<const adjust::Method> expected_methods) {
  using Key = std::pair<CellKey, std::size_t>;
  std::map<Key, std::vector<const ReplicateRecord*>> groups;
  for (const auto& r : records) groups[{r.cell, method_rank(r.method)}].push_back(&r);

  std::set<std::size_t> methods;
  if (expected_methods.empty()) {
    for (const auto& [key, _] : groups) methods.insert(key.second);
  } else {
    for (auto m : expected_methods) methods.insert(method_rank(m));
  }
  for (const auto& cell : expected_cells) {
    for (auto m : methods) groups.try_emplace({cell, m});
  }

  StudySummary summary;
  summary.rows.reserve(groups.size());
  for (const auto& [key, group] : groups) {
    SummaryRow row;
    row.cell = key.first;
    row.method = adjust::kAllMethods[key.second];
    if (group.empty()) {
      row.missing = true;
      summary.rows.push_back(row);
      continue;
    }
    std::vector<std::optional<double>> sens, spec, power;
    std::vector<double> eff, m2;
    for (const auto* r : group) {
      sens.push_back(r->sensitivity);
      spec.push_back(r->specificity);
      power.push_back(r->power);
      eff.push_back(r->effective_alpha);
      if (r->m2) m2.push_back(*r->m2);
      row.warnings += r->warnings;
    }
    row.sensitivity = summarize(sens);
    row.specificity = summarize(spec);
    row.power = summarize(power);
    row.mean_effective_alpha = mean_of(eff);
    row.mean_m2 = mean_of(m2);
    row.replicates_used = group.size();
    summary.rows.push_back(row);
  }
  return summary;
}

}  // namespace mtc::metrics
