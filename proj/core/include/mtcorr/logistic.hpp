#pragma once

#include <cstdint>
#include <span>

namespace mtc::numerics {

struct IrlsOptions {
  int max_iterations = 50;
  double tolerance = 1e-8;
};

// Maximum-likelihood fit of logit P(y = 1) = intercept + coefficient * x.
//
// When converged is false (complete or quasi-complete separation, or a
// singular information matrix) the estimates are the last iterate and
// p_value is not reliable.
struct LogisticFit {
  double intercept = 0.0;
  double coefficient = 0.0;
  double std_error = 0.0;
  double z_statistic = 0.0;
  double p_value = 1.0;
  bool converged = false;
  int iterations = 0;
};

/// Univariate logistic regression by iteratively reweighted least squares,
/// started at (0, 0). Convergence is declared when the largest absolute
/// parameter update falls below options.tolerance. The slope's standard
/// error comes from the inverse observed information at the returned
/// estimate; p_value is the two-sided Wald p-value 2 * (1 - Phi(|z|)).
///
/// Throws ContractError for N < 4 or mismatched lengths,
/// DegenerateOutcomeError when the outcomes hold a single class and
/// DegenerateCovariateError when the covariate is constant.
LogisticFit fit_logistic_univariate(std::span<const std::uint8_t> outcomes,
                                    std::span<const double> covariate,
                                    IrlsOptions options = {});

/// Log-likelihood and score of the model at (intercept, coefficient).
struct LogisticScore {
  double log_likelihood;
  double d_intercept;
  double d_coefficient;
};

LogisticScore logistic_score(std::span<const std::uint8_t> outcomes,
                             std::span<const double> covariate,
                             double intercept, double coefficient);

}  // namespace mtc::numerics
