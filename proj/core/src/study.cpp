#include "mtcorr/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <thread>

#include "mtcorr/errors.hpp"
#include "mtcorr/labels.hpp"

namespace mtc::simulate {

void StudyConfig::validate() const {
  cohort.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("StudyConfig: alpha must lie in (0, 1)");
  if (!(bea_beta >= 0.0 && bea_beta < 1.0)) {
    throw ContractError("StudyConfig: bea_beta must lie in [0, 1)");
  }
  if (replicates < 1) throw ContractError("StudyConfig: replicates must be at least 1");
  if (methods.empty()) throw ContractError("StudyConfig: no methods requested");
  if (!(label_probability > 0.0 && label_probability <= 1.0)) {
    throw ContractError("StudyConfig: label_probability must lie in (0, 1]");
  }
  if (!(baseline_power > 0.0 && baseline_power < 1.0)) {
    throw ContractError("StudyConfig: baseline_power must lie in (0, 1)");
  }
}

metrics::CellKey StudyConfig::cell() const {
  return {cohort.n_patients, cohort.m_biomarkers, cohort.target_positive_rate};
}

std::uint64_t cell_seed(std::uint64_t master_seed, const metrics::CellKey& cell) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "cell:%zu:%zu:%.10g", cell.sample_size, cell.m_biomarkers,
                cell.positive_rate);
  return numerics::splitmix64(numerics::splitmix64(master_seed) ^ numerics::fnv1a64(buf));
}

std::vector<metrics::ReplicateRecord> run_replicate(const StudyConfig& study,
                                                    const CohortConfig& cohort,
                                                    std::size_t replicate) {
  std::optional<MarkerScan> scan;
  if (cohort.generator_mode == GeneratorMode::data_driven) {
    scan.emplace(compute_pvalues(generate_cohort(cohort, replicate)));
  } else {
    scan.emplace(MarkerScan{direct_p_generate(cohort, replicate, study.alpha), 0, 0});
  }
  const auto& batch = scan->batch;

  auto label_stream = numerics::derive_stream(cohort.master_seed, "labels", replicate);
  const auto labels =
      assign_truth_labels(batch, study.alpha, study.label_probability, label_stream);

  const auto p = batch.p_values();
  const auto significant = static_cast<std::size_t>(
      std::count_if(p.begin(), p.end(), [&](double v) { return v < study.alpha; }));

  const metrics::PowerBaseline baseline(study.alpha, study.baseline_power);
  const adjust::MethodParams params{study.alpha, study.bea_beta, study.cap_policy};

  std::vector<metrics::ReplicateRecord> records;
  records.reserve(study.methods.size());
  for (auto method : study.methods) {
    const auto outcome = adjust::apply(method, batch, params);
    metrics::ReplicateRecord rec;
    rec.cell = study.cell();
    rec.replicate = replicate;
    rec.method = method;
    rec.counts = metrics::confusion(labels, outcome.rejected);
    rec.sensitivity = metrics::sensitivity(rec.counts);
    rec.specificity = metrics::specificity(rec.counts);
    rec.effective_alpha = outcome.effective_alpha;
    rec.power = metrics::power_from_alpha(outcome.effective_alpha, baseline);
    if (outcome.diagnostics) rec.m2 = outcome.diagnostics->m2;
    rec.n_significant = significant;
    rec.warnings = scan->warnings();
    records.push_back(rec);
  }
  return records;
}

ReplicateResults run_study(const StudyConfig& study, unsigned threads) {
  study.validate();

  ReplicateResults results;
  results.cell = study.cell();
  results.replicates_requested = study.replicates;

  CohortConfig cohort = study.cohort;
  cohort.design_alpha = study.alpha;
  cohort.design_power = study.baseline_power;
  if (cohort.generator_mode == GeneratorMode::data_driven) {
    CalibrationOptions options;
    options.alpha = study.alpha;
    try {
      const auto cal = calibrate_positive_rate(cohort, options);
      cohort.effect_size = cal.effect_size;
      cohort.associated_fraction = cal.associated_fraction;
      results.calibration = cal;
    } catch (const CalibrationError& e) {
      throw SimulationQualityError(std::string("calibration failed: ") + e.what());
    } catch (const GenerationError& e) {
      throw SimulationQualityError(std::string("calibration failed: ") + e.what());
    }
  }

  struct Slot {
    std::vector<metrics::ReplicateRecord> records;
    std::optional<std::string> error;
  };
  std::vector<Slot> slots(study.replicates);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t r = next++; r < slots.size(); r = next++) {
      try {
        slots[r].records = run_replicate(study, cohort, r);
      } catch (const std::exception& e) {
        slots[r].error = e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, slots.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  for (std::size_t r = 0; r < slots.size(); ++r) {
    if (slots[r].error) {
      results.errors.push_back({r, *slots[r].error});
    } else {
      for (auto& rec : slots[r].records) results.records.push_back(std::move(rec));
    }
  }

  if (static_cast<double>(results.errors.size()) >
      0.05 * static_cast<double>(study.replicates)) {
    throw SimulationQualityError("run_study: " + std::to_string(results.errors.size()) + " of " +
                                 std::to_string(study.replicates) +
                                 " replicates failed; first: " + results.errors.front().message);
  }
  return results;
}

}  // namespace mtc::simulate
