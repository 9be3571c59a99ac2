#pragma once

#include <cstdint>
#include <vector>

#include "mtcorr/adjust.hpp"
#include "mtcorr/random.hpp"

namespace mtc::simulate {

// Ground truth for one replicate. Only tests with raw p < alpha can be
// labelled true positive.
struct TruthLabels {
  std::vector<std::uint8_t> is_true_positive;
  double label_probability = 0.5;

  std::size_t size() const { return is_true_positive.size(); }
  std::size_t positives() const;
};

/// Each test with p < alpha becomes a true positive with probability
/// label_probability, drawn from stream independently of the p-value; every
/// other test is a true negative. One draw is consumed per sub-alpha test.
TruthLabels assign_truth_labels(const adjust::PValueBatch& batch, double alpha,
                                double label_probability,
                                numerics::RandomStream& stream);

}  // namespace mtc::simulate
