#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mtc::adjust {

enum class Method { bonferroni, holm, bh, bea };

// Legend and output order used everywhere.
inline constexpr Method kAllMethods[] = {Method::bonferroni, Method::holm,
                                         Method::bh, Method::bea};

std::string_view to_string(Method method);
std::optional<Method> parse_method(std::string_view text);

enum class CapPolicy { cap_at_alpha, uncapped };

std::string_view to_string(CapPolicy policy);
std::optional<CapPolicy> parse_cap_policy(std::string_view text);

// Raw p-values for m0 >= 1 tests with unique identifiers.
class PValueBatch {
 public:
  PValueBatch(std::vector<double> p_values, std::vector<std::string> test_ids);

  // Identifiers "t1".."tm".
  static PValueBatch from_values(std::vector<double> p_values);

  std::size_t size() const { return p_values_.size(); }
  std::span<const double> p_values() const { return p_values_; }
  const std::vector<std::string>& test_ids() const { return test_ids_; }
  double operator[](std::size_t i) const { return p_values_[i]; }

  // Indices ordered by ascending p, ties by original index.
  std::vector<std::size_t> ascending_order() const;

 private:
  std::vector<double> p_values_;
  std::vector<std::string> test_ids_;
};

// Quantities of one BEA evaluation. With m0 tests and n of them below alpha:
//   b1 = n / m0, m1 = m0 * b1 = n, x = 1 / (1 - beta), m2 = m0 * b1^x.
struct BeaDiagnostics {
  std::size_t m0 = 0;
  std::size_t n = 0;
  double b1 = 0.0;
  double m1 = 0.0;
  double beta = 0.0;
  double x = 1.0;
  double m2 = 0.0;
  // alpha / m2; +inf when m2 == 0.
  double threshold_uncapped = 0.0;
  double threshold_applied = 0.0;
  bool cap_engaged = false;
};

struct AdjustmentOutcome {
  Method method = Method::bonferroni;
  std::vector<bool> rejected;
  // Absent for BEA, which has no per-test adjusted p-value.
  std::optional<std::vector<double>> adjusted_p;
  double effective_alpha = 0.0;
  std::optional<BeaDiagnostics> diagnostics;

  std::size_t rejection_count() const;
};

struct MethodParams {
  double alpha = 0.05;
  double bea_beta = 0.8;
  CapPolicy cap = CapPolicy::cap_at_alpha;
};

// Reject p < alpha / m0.
AdjustmentOutcome bonferroni(const PValueBatch& batch, double alpha);

// Step-down: reject ranks while p_(k) < alpha / (m0 - k + 1).
// effective_alpha = alpha / (m0 - R + 1), or alpha / m0 when R = 0.
AdjustmentOutcome holm(const PValueBatch& batch, double alpha);

// Step-up: reject ranks 1..K with K the largest k such that
// p_(k) <= k * alpha / m0. effective_alpha = K * alpha / m0 (alpha / m0 if K = 0).
AdjustmentOutcome bh(const PValueBatch& batch, double alpha);

BeaDiagnostics bea_effective_count(std::size_t m0, std::size_t n, double beta);

// Bonferroni-style threshold alpha / m2 on the BEA effective test count.
// n counts p < alpha strictly; n = 0 rejects nothing.
AdjustmentOutcome bea(const PValueBatch& batch, double alpha, double beta,
                      CapPolicy cap = CapPolicy::cap_at_alpha);

AdjustmentOutcome apply(Method method, const PValueBatch& batch,
                        const MethodParams& params);

}  // namespace mtc::adjust
