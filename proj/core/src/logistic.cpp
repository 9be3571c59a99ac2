#include "mtcorr/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtcorr/errors.hpp"
#include "mtcorr/normal.hpp"

namespace mtc::numerics {
namespace {

double sigmoid(double eta) {
  if (eta >= 0.0) {
    return 1.0 / (1.0 + std::exp(-eta));
  }
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

// log(1 + exp(eta)) without overflow.
double softplus(double eta) {
  return eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

struct Information {
  double g0 = 0.0, g1 = 0.0;                // score
  double h00 = 0.0, h01 = 0.0, h11 = 0.0;   // observed information
};

Information information_at(std::span<const std::uint8_t> y,
                           std::span<const double> x, double b0, double b1) {
  Information info;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double mu = sigmoid(b0 + b1 * x[i]);
    const double w = mu * (1.0 - mu);
    const double r = static_cast<double>(y[i]) - mu;
    info.g0 += r;
    info.g1 += r * x[i];
    info.h00 += w;
    info.h01 += w * x[i];
    info.h11 += w * x[i] * x[i];
  }
  return info;
}

void validate(std::span<const std::uint8_t> y, std::span<const double> x) {
  if (y.size() != x.size()) {
    throw ContractError("fit_logistic_univariate: outcomes and covariate differ in length");
  }
  if (y.size() < 4) {
    throw ContractError("fit_logistic_univariate: need at least 4 observations");
  }
  std::size_t ones = 0;
  for (auto v : y) {
    if (v > 1) throw ContractError("fit_logistic_univariate: outcomes must be 0 or 1");
    ones += v;
  }
  if (ones == 0 || ones == y.size()) {
    throw DegenerateOutcomeError("fit_logistic_univariate: outcomes contain a single class");
  }
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  if (!(*hi > *lo)) {
    throw DegenerateCovariateError("fit_logistic_univariate: covariate has zero variance");
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw ContractError("fit_logistic_univariate: non-finite covariate");
  }
}

}  // namespace

LogisticScore logistic_score(std::span<const std::uint8_t> outcomes,
                             std::span<const double> covariate, double intercept,
                             double coefficient) {
  LogisticScore s{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const double eta = intercept + coefficient * covariate[i];
    const double y = static_cast<double>(outcomes[i]);
    s.log_likelihood += y * eta - softplus(eta);
    const double r = y - sigmoid(eta);
    s.d_intercept += r;
    s.d_coefficient += r * covariate[i];
  }
  return s;
}

LogisticFit fit_logistic_univariate(std::span<const std::uint8_t> outcomes,
                                    std::span<const double> covariate,
                                    IrlsOptions options) {
  validate(outcomes, covariate);

  LogisticFit fit;
  double b0 = 0.0, b1 = 0.0;
  Information info = information_at(outcomes, covariate, b0, b1);

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const double det = info.h00 * info.h11 - info.h01 * info.h01;
    if (!(det > 0.0) || !std::isfinite(det)) break;

    const double step0 = (info.h11 * info.g0 - info.h01 * info.g1) / det;
    const double step1 = (info.h00 * info.g1 - info.h01 * info.g0) / det;
    if (!std::isfinite(step0) || !std::isfinite(step1)) break;

    b0 += step0;
    b1 += step1;
    fit.iterations = iter;
    info = information_at(outcomes, covariate, b0, b1);

    if (std::max(std::fabs(step0), std::fabs(step1)) < options.tolerance) {
      fit.converged = true;
      break;
    }
  }

  fit.intercept = b0;
  fit.coefficient = b1;

  const double det = info.h00 * info.h11 - info.h01 * info.h01;
  const double var1 = det > 0.0 ? info.h00 / det : std::numeric_limits<double>::infinity();
  fit.std_error = std::isfinite(var1) && var1 > 0.0
                      ? std::sqrt(var1)
                      : std::numeric_limits<double>::infinity();
  if (!fit.converged || !std::isfinite(fit.std_error)) {
    fit.converged = false;
  }
  fit.z_statistic = std::isfinite(fit.std_error) ? b1 / fit.std_error : 0.0;
  fit.p_value = std::isfinite(fit.z_statistic)
                    ? 2.0 * std_normal_cdf(-std::fabs(fit.z_statistic))
                    : 0.0;
  return fit;
}

}  // namespace mtc::numerics
