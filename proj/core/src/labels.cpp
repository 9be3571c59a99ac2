#include "mtcorr/labels.hpp"

#include <algorithm>

#include "mtcorr/errors.hpp"

namespace mtc::simulate {

std::size_t TruthLabels::positives() const {
  return static_cast<std::size_t>(
      std::count(is_true_positive.begin(), is_true_positive.end(), std::uint8_t{1}));
}

TruthLabels assign_truth_labels(const adjust::PValueBatch& batch, double alpha,
                                double label_probability,
                                numerics::RandomStream& stream) {
  if (!(label_probability > 0.0 && label_probability <= 1.0)) {
    throw DomainError("assign_truth_labels: label_probability must lie in (0, 1]");
  }
  TruthLabels labels;
  labels.label_probability = label_probability;
  labels.is_true_positive.assign(batch.size(), 0);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    if (batch[i] < alpha && stream.bernoulli(label_probability)) {
      labels.is_true_positive[i] = 1;
    }
  }
  return labels;
}

}  // namespace mtc::simulate
