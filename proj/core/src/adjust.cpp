#include "mtcorr/adjust.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "mtcorr/errors.hpp"

namespace mtc::adjust {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
}

void require_beta(double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) {
    throw DomainError("beta must lie in [0, 1)");
  }
}

AdjustmentOutcome make_outcome(Method method, std::size_t m) {
  AdjustmentOutcome out;
  out.method = method;
  out.rejected.assign(m, false);
  return out;
}

}  // namespace

std::string_view to_string(Method method) {
  switch (method) {
    case Method::bonferroni: return "bonferroni";
    case Method::holm: return "holm";
    case Method::bh: return "bh";
    case Method::bea: return "bea";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view text) {
  for (Method m : kAllMethods) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

std::string_view to_string(CapPolicy policy) {
  return policy == CapPolicy::cap_at_alpha ? "cap-at-alpha" : "uncapped";
}

std::optional<CapPolicy> parse_cap_policy(std::string_view text) {
  if (text == "cap-at-alpha") return CapPolicy::cap_at_alpha;
  if (text == "uncapped") return CapPolicy::uncapped;
  return std::nullopt;
}

PValueBatch::PValueBatch(std::vector<double> p_values,
                         std::vector<std::string> test_ids)
    : p_values_(std::move(p_values)), test_ids_(std::move(test_ids)) {
  if (p_values_.empty()) throw ContractError("PValueBatch: at least one test required");
  if (p_values_.size() != test_ids_.size()) {
    throw ContractError("PValueBatch: p-values and ids differ in length");
  }
  for (double p : p_values_) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("PValueBatch: p-value outside [0, 1]");
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(test_ids_.size());
  for (const auto& id : test_ids_) {
    if (!seen.insert(id).second) {
      throw ContractError("PValueBatch: duplicate test id '" + id + "'");
    }
  }
}

PValueBatch PValueBatch::from_values(std::vector<double> p_values) {
  std::vector<std::string> ids;
  ids.reserve(p_values.size());
  for (std::size_t i = 0; i < p_values.size(); ++i) ids.push_back("t" + std::to_string(i + 1));
  return PValueBatch(std::move(p_values), std::move(ids));
}

std::vector<std::size_t> PValueBatch::ascending_order() const {
  std::vector<std::size_t> order(p_values_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
    return p_values_[a] < p_values_[b];
  });
  return order;
}

std::size_t AdjustmentOutcome::rejection_count() const {
  return static_cast<std::size_t>(std::count(rejected.begin(), rejected.end(), true));
}

AdjustmentOutcome bonferroni(const PValueBatch& batch, double alpha) {
  require_alpha(alpha);
  const std::size_t m = batch.size();
  const double md = static_cast<double>(m);
  auto out = make_outcome(Method::bonferroni, m);
  std::vector<double> adjusted(m);
  const double threshold = alpha / md;
  for (std::size_t i = 0; i < m; ++i) {
    out.rejected[i] = batch[i] < threshold;
    adjusted[i] = std::min(1.0, batch[i] * md);
  }
  out.adjusted_p = std::move(adjusted);
  out.effective_alpha = threshold;
  return out;
}

AdjustmentOutcome holm(const PValueBatch& batch, double alpha) {
  require_alpha(alpha);
  const std::size_t m = batch.size();
  auto out = make_outcome(Method::holm, m);
  const auto order = batch.ascending_order();

  std::size_t rejections = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double threshold = alpha / static_cast<double>(m - k);
    if (!(batch[order[k]] < threshold)) break;
    out.rejected[order[k]] = true;
    ++rejections;
  }

  std::vector<double> adjusted(m);
  double running_max = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double scaled = static_cast<double>(m - k) * batch[order[k]];
    running_max = std::max(running_max, std::min(1.0, scaled));
    adjusted[order[k]] = running_max;
  }
  out.adjusted_p = std::move(adjusted);
  out.effective_alpha = rejections == 0
                            ? alpha / static_cast<double>(m)
                            : alpha / static_cast<double>(m - rejections + 1);
  return out;
}

AdjustmentOutcome bh(const PValueBatch& batch, double alpha) {
  require_alpha(alpha);
  const std::size_t m = batch.size();
  const double md = static_cast<double>(m);
  auto out = make_outcome(Method::bh, m);
  const auto order = batch.ascending_order();

  std::size_t last = 0;  // K
  for (std::size_t k = m; k >= 1; --k) {
    if (batch[order[k - 1]] <= static_cast<double>(k) * alpha / md) {
      last = k;
      break;
    }
  }
  for (std::size_t k = 0; k < last; ++k) out.rejected[order[k]] = true;

  std::vector<double> adjusted(m);
  double running_min = 1.0;
  for (std::size_t k = m; k >= 1; --k) {
    const double raw = batch[order[k - 1]];
    const double scaled = std::max(raw, raw * md / static_cast<double>(k));
    running_min = std::min(running_min, std::min(1.0, scaled));
    adjusted[order[k - 1]] = running_min;
  }
  out.adjusted_p = std::move(adjusted);
  out.effective_alpha = last == 0 ? alpha / md : static_cast<double>(last) * alpha / md;
  return out;
}

BeaDiagnostics bea_effective_count(std::size_t m0, std::size_t n, double beta) {
  require_beta(beta);
  if (m0 == 0) throw ContractError("bea_effective_count: m0 must be at least 1");
  if (n > m0) throw ContractError("bea_effective_count: n exceeds m0");

  BeaDiagnostics d;
  d.m0 = m0;
  d.n = n;
  d.beta = beta;
  d.b1 = static_cast<double>(n) / static_cast<double>(m0);
  d.m1 = static_cast<double>(m0) * d.b1;
  d.x = 1.0 / (1.0 - beta);
  d.m2 = n == 0 ? 0.0 : static_cast<double>(m0) * std::pow(d.b1, d.x);
  return d;
}

AdjustmentOutcome bea(const PValueBatch& batch, double alpha, double beta,
                      CapPolicy cap) {
  require_alpha(alpha);
  require_beta(beta);
  const std::size_t m = batch.size();
  auto out = make_outcome(Method::bea, m);

  const auto p = batch.p_values();
  const auto n = static_cast<std::size_t>(
      std::count_if(p.begin(), p.end(), [alpha](double v) { return v < alpha; }));
  BeaDiagnostics d = bea_effective_count(m, n, beta);

  if (n == 0) {
    d.threshold_uncapped = std::numeric_limits<double>::infinity();
    d.threshold_applied = alpha;
  } else {
    d.threshold_uncapped = alpha / d.m2;
    if (cap == CapPolicy::cap_at_alpha) {
      d.threshold_applied = std::min(alpha, d.threshold_uncapped);
      d.cap_engaged = d.threshold_uncapped > alpha;
    } else {
      d.threshold_applied = std::min(1.0, d.threshold_uncapped);
      d.cap_engaged = d.threshold_uncapped > 1.0;
    }
    for (std::size_t i = 0; i < m; ++i) out.rejected[i] = p[i] < d.threshold_applied;
  }
  out.effective_alpha = d.threshold_applied;
  out.diagnostics = d;
  return out;
}

AdjustmentOutcome apply(Method method, const PValueBatch& batch,
                        const MethodParams& params) {
  switch (method) {
    case Method::bonferroni: return bonferroni(batch, params.alpha);
    case Method::holm: return holm(batch, params.alpha);
    case Method::bh: return bh(batch, params.alpha);
    case Method::bea: return bea(batch, params.alpha, params.bea_beta, params.cap);
  }
  throw ContractError("apply: unknown method");
}

}  // namespace mtc::adjust
