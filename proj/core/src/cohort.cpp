#include "mtcorr/cohort.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mtcorr/errors.hpp"
#include "mtcorr/logistic.hpp"
#include "mtcorr/normal.hpp"

namespace mtc::simulate {

std::string to_string(GeneratorMode mode) {
  return mode == GeneratorMode::data_driven ? "data-driven" : "direct-p";
}

void CohortConfig::validate() const {
  if (n_patients < 20) throw ContractError("CohortConfig: n_patients must be at least 20");
  if (m_biomarkers < 1) throw ContractError("CohortConfig: m_biomarkers must be at least 1");
  if (!(target_positive_rate > 0.0 && target_positive_rate < 1.0)) {
    throw ContractError("CohortConfig: target_positive_rate must lie in (0, 1)");
  }
  if (!(prevalence > 0.0 && prevalence < 1.0)) {
    throw ContractError("CohortConfig: prevalence must lie in (0, 1)");
  }
  if (effect_size && !std::isfinite(*effect_size)) {
    throw ContractError("CohortConfig: effect_size must be finite");
  }
  if (!(design_power > 0.0 && design_power < 1.0)) {
    throw ContractError("CohortConfig: design_power must lie in (0, 1)");
  }
  if (!(design_alpha > 0.0 && design_alpha < 1.0)) {
    throw ContractError("CohortConfig: design_alpha must lie in (0, 1)");
  }
  if (!(direct_p_shape > 0.0)) throw ContractError("CohortConfig: direct_p_shape must be positive");
  if (!(associated_fraction >= 0.0 && associated_fraction <= 1.0)) {
    throw ContractError("CohortConfig: associated_fraction must lie in [0, 1]");
  }
}

double CohortConfig::resolved_effect_size() const {
  if (effect_size) return *effect_size;
  return design_effect_size(design_power, n_patients, prevalence, design_alpha);
}

CohortDataset generate_cohort(const CohortConfig& config, std::size_t replicate_index) {
  return generate_cohort(config,
                         numerics::derive_stream(config.master_seed, "cohort", replicate_index));
}

CohortDataset generate_cohort(const CohortConfig& config, numerics::RandomStream stream) {
  config.validate();
  const std::size_t n = config.n_patients;
  const std::size_t m = config.m_biomarkers;

  CohortDataset data;
  data.disease_status.resize(n);
  bool both_classes = false;
  for (int attempt = 0; attempt < 10 && !both_classes; ++attempt) {
    std::size_t cases = 0;
    for (auto& s : data.disease_status) {
      s = stream.bernoulli(config.prevalence) ? 1 : 0;
      cases += s;
    }
    both_classes = cases > 0 && cases < n;
  }
  if (!both_classes) {
    throw GenerationError("generate_cohort: disease status has a single class after 10 draws");
  }

  const auto associated = static_cast<std::size_t>(
      std::llround(config.associated_fraction * static_cast<double>(m)));
  data.truly_associated.assign(m, 0);
  std::fill_n(data.truly_associated.begin(), std::min(associated, m), std::uint8_t{1});
  stream.shuffle(std::span<std::uint8_t>(data.truly_associated));

  const double effect = config.resolved_effect_size();
  data.expression = ExpressionMatrix(n, m);
  for (std::size_t j = 0; j < m; ++j) {
    auto column_stream = stream.derive("marker", j);
    auto column = data.expression.column(j);
    const double shift = data.truly_associated[j] ? effect : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      column[i] = column_stream.normal() + (data.disease_status[i] ? shift : 0.0);
    }
  }
  return data;
}

MarkerScan compute_pvalues(const CohortDataset& dataset) {
  const std::size_t m = dataset.expression.cols();
  std::vector<double> p(m, 1.0);
  std::size_t separated = 0;
  std::size_t degenerate = 0;
  for (std::size_t j = 0; j < m; ++j) {
    try {
      const auto fit = numerics::fit_logistic_univariate(dataset.disease_status,
                                                        dataset.expression.column(j));
      if (fit.converged) {
        p[j] = fit.p_value;
      } else {
        p[j] = 0.0;
        ++separated;
      }
    } catch (const DegenerateCovariateError&) {
      p[j] = 1.0;
      ++degenerate;
    }
  }
  std::vector<std::string> ids;
  ids.reserve(m);
  for (std::size_t j = 0; j < m; ++j) ids.push_back("b" + std::to_string(j + 1));
  return MarkerScan{adjust::PValueBatch(std::move(p), std::move(ids)), separated, degenerate};
}

adjust::PValueBatch direct_p_generate(const CohortConfig& config,
                                      std::size_t replicate_index, double alpha) {
  config.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("direct_p_generate: alpha must lie in (0, 1)");
  auto stream = numerics::derive_stream(config.master_seed, "direct-p", replicate_index);
  const std::size_t m = config.m_biomarkers;
  const auto significant = std::min<std::size_t>(
      m, static_cast<std::size_t>(
             std::llround(config.target_positive_rate * static_cast<double>(m))));

  std::vector<double> p(m);
  const double exponent = 1.0 / config.direct_p_shape;
  for (std::size_t i = 0; i < m; ++i) {
    p[i] = i < significant ? alpha * std::pow(stream.uniform_open(), exponent)
                           : alpha + (1.0 - alpha) * stream.uniform();
  }
  stream.shuffle(std::span<double>(p));

  std::vector<std::string> ids;
  ids.reserve(m);
  for (std::size_t j = 0; j < m; ++j) ids.push_back("b" + std::to_string(j + 1));
  return adjust::PValueBatch(std::move(p), std::move(ids));
}

double analytic_marker_power(double effect_size, std::size_t n_patients, double prevalence,
                             double alpha) {
  const double n = static_cast<double>(n_patients);
  const double cases = n * prevalence;
  const double controls = n * (1.0 - prevalence);
  const double shift = std::fabs(effect_size) / std::sqrt(1.0 / cases + 1.0 / controls);
  const double critical = numerics::std_normal_upper_quantile(alpha / 2.0);
  return numerics::std_normal_cdf(shift - critical) +
         numerics::std_normal_cdf(-shift - critical);
}

double design_effect_size(double power, std::size_t n_patients, double prevalence,
                          double alpha) {
  const double n = static_cast<double>(n_patients);
  const double noncentrality =
      numerics::std_normal_upper_quantile(alpha / 2.0) + numerics::std_normal_quantile(power);
  return noncentrality * std::sqrt(1.0 / (n * prevalence) + 1.0 / (n * (1.0 - prevalence)));
}

double solve_associated_fraction(double target_rate, double marker_power, double alpha) {
  const double gain = marker_power - alpha;
  if (!(gain > 0.0)) return target_rate > alpha ? 1.0 : 0.0;
  return std::clamp((target_rate - alpha) / gain, 0.0, 1.0);
}

Calibration calibrate_positive_rate(const CohortConfig& config, CalibrationOptions options) {
  config.validate();
  if (config.generator_mode != GeneratorMode::data_driven) {
    throw ContractError("calibrate_positive_rate: requires data-driven mode");
  }

  Calibration cal;
  cal.effect_size = config.resolved_effect_size();
  std::ostringstream trail;
  for (int step = 0; step <= options.max_steps; ++step) {
    cal.effect_steps = step;
    cal.analytic_power = analytic_marker_power(cal.effect_size, config.n_patients,
                                               config.prevalence, options.alpha);
    cal.associated_fraction = solve_associated_fraction(
        config.target_positive_rate, cal.analytic_power, options.alpha);

    CohortConfig pilot = config;
    pilot.effect_size = cal.effect_size;
    pilot.associated_fraction = cal.associated_fraction;
    double rate_sum = 0.0;
    for (std::size_t i = 0; i < options.pilot_replicates; ++i) {
      const auto index = static_cast<std::uint64_t>(step) * options.pilot_replicates + i;
      const auto data =
          generate_cohort(pilot, numerics::derive_stream(config.master_seed, "pilot", index));
      const auto scan = compute_pvalues(data);
      const auto p = scan.batch.p_values();
      const auto hits = std::count_if(p.begin(), p.end(),
                                      [&](double v) { return v < options.alpha; });
      rate_sum += static_cast<double>(hits) / static_cast<double>(p.size());
    }
    cal.pilot_rate = rate_sum / static_cast<double>(std::max<std::size_t>(1, options.pilot_replicates));
    trail << " [effect " << cal.effect_size << ": f=" << cal.associated_fraction
          << " pilot=" << cal.pilot_rate << "]";
    if (std::fabs(cal.pilot_rate - config.target_positive_rate) <= options.tolerance) {
      return cal;
    }
    cal.effect_size += options.effect_step;
  }
  throw CalibrationError("calibrate_positive_rate: target rate " +
                         std::to_string(config.target_positive_rate) +
                         " not reached;" + trail.str());
}

}  // namespace mtc::simulate
