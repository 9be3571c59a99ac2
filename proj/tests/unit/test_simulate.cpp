#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "mtcorr/errors.hpp"
#include "mtcorr/labels.hpp"
#include "mtcorr/study.hpp"
#include "support/oracles.hpp"

using namespace mtc;
using namespace mtc::simulate;

namespace {

CohortConfig small_cohort(std::size_t n, std::size_t m, std::uint64_t seed) {
  CohortConfig c;
  c.n_patients = n;
  c.m_biomarkers = m;
  c.master_seed = seed;
  return c;
}

double sub_alpha_rate(const adjust::PValueBatch& b, double alpha = 0.05) {
  const auto p = b.p_values();
  return static_cast<double>(std::count_if(p.begin(), p.end(), [&](double v) { return v < alpha; })) /
         static_cast<double>(p.size());
}

bool same_records(const std::vector<metrics::ReplicateRecord>& a,
                  const std::vector<metrics::ReplicateRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto &x = a[i], &y = b[i];
    if (!(x.cell == y.cell && x.replicate == y.replicate && x.method == y.method &&
          x.counts == y.counts && x.sensitivity == y.sensitivity &&
          x.specificity == y.specificity && x.power == y.power &&
          x.effective_alpha == y.effective_alpha && x.m2 == y.m2 &&
          x.n_significant == y.n_significant && x.warnings == y.warnings))
      return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("null generator gives uniform p-values") {
  auto c = small_cohort(200, 500, 99);
  c.effect_size = 0.0;
  std::size_t hits = 0, total = 0;
  std::vector<double> pooled;
  for (std::size_t r = 0; r < 100; ++r) {
    const auto scan = compute_pvalues(generate_cohort(c, r));
    const auto p = scan.batch.p_values();
    hits += static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](double v) { return v < 0.05; }));
    total += p.size();
    if (pooled.size() < 10000) pooled.insert(pooled.end(), p.begin(), p.end());
  }
  CHECK(total >= 50000);
  CHECK(std::fabs(static_cast<double>(hits) / static_cast<double>(total) - 0.05) <= 0.02);
  pooled.resize(10000);
  CHECK(oracle::ks_uniform(pooled) < 0.05);
}

TEST_CASE("cohort generation is deterministic per replicate") {
  auto c = small_cohort(100, 20, 42);
  c.associated_fraction = 0.3;
  const auto a = generate_cohort(c, 3), b = generate_cohort(c, 3), other = generate_cohort(c, 4);
  CHECK(a.disease_status == b.disease_status);
  CHECK(a.expression == b.expression);
  CHECK(a.truly_associated == b.truly_associated);
  CHECK_FALSE(a.expression == other.expression);
  CHECK(std::count(a.truly_associated.begin(), a.truly_associated.end(), 1) == 6);
}

TEST_CASE("associated marker carries the requested mean shift") {
  auto c = small_cohort(1000, 1, 7);
  c.effect_size = 0.5;
  c.associated_fraction = 1.0;
  const auto d = generate_cohort(c, 0);
  double sum1 = 0, sum0 = 0;
  std::size_t n1 = 0, n0 = 0;
  for (std::size_t i = 0; i < 1000; ++i) {
    if (d.disease_status[i]) {
      sum1 += d.expression(i, 0);
      ++n1;
    } else {
      sum0 += d.expression(i, 0);
      ++n0;
    }
  }
  CHECK(std::fabs(sum1 / static_cast<double>(n1) - sum0 / static_cast<double>(n0) - 0.5) <= 0.1);
}

TEST_CASE("overwhelming effect is detected") {
  auto c = small_cohort(1000, 1, 8);
  c.effect_size = 3.0;
  c.associated_fraction = 1.0;
  const auto scan = compute_pvalues(generate_cohort(c, 0));
  CHECK(scan.batch[0] < 1e-10);
}

TEST_CASE("constant biomarker is recorded as p = 1 with a flag") {
  CohortDataset d;
  d.disease_status = {0, 1, 0, 1, 1, 0, 0, 1};
  d.expression = ExpressionMatrix(8, 2);
  const double values[] = {0.3, -1.2, 0.8, 0.1, 2.0, -0.4, 0.9, -0.7};
  for (std::size_t i = 0; i < 8; ++i) {
    d.expression.column(0)[i] = 1.5;
    d.expression.column(1)[i] = values[i];
  }
  d.truly_associated = {0, 0};
  const auto scan = compute_pvalues(d);
  CHECK(scan.batch[0] == 1.0);
  CHECK(scan.degenerate_covariates == 1);
  CHECK(scan.batch[1] < 1.0);
  CHECK(scan.batch.test_ids() == std::vector<std::string>{"b1", "b2"});
}

TEST_CASE("separated biomarker is recorded as p = 0 with a warning") {
  CohortDataset d;
  d.disease_status = {0, 0, 0, 1, 1, 1};
  d.expression = ExpressionMatrix(6, 1);
  const double values[] = {-3, -2, -1, 1, 2, 3};
  for (std::size_t i = 0; i < 6; ++i) d.expression.column(0)[i] = values[i];
  d.truly_associated = {1};
  const auto scan = compute_pvalues(d);
  CHECK(scan.batch[0] == 0.0);
  CHECK(scan.separation_warnings == 1);
  CHECK(scan.warnings() == 1);
}

TEST_CASE("calibration equation") {
  CHECK(solve_associated_fraction(0.05, 0.05, 0.05) == 0.0);
  CHECK(solve_associated_fraction(0.30, 0.9, 0.05) == doctest::Approx(0.25 / 0.85));
  CHECK(std::fabs(solve_associated_fraction(0.30, 0.9, 0.05) - 0.294) <= 5e-4);
  CHECK(solve_associated_fraction(0.99, 0.5, 0.05) == 1.0);
  CHECK(analytic_marker_power(0.0, 1000, 0.5, 0.05) == doctest::Approx(0.05));
  const double d = design_effect_size(0.8, 1000, 0.5, 0.05);
  CHECK(std::fabs(analytic_marker_power(d, 1000, 0.5, 0.05) - 0.8) <= 1e-5);
}

TEST_CASE("calibrated study hits the target rate") {
  StudyConfig s;
  s.cohort = small_cohort(300, 300, 21);
  s.replicates = 20;
  s.methods = {adjust::Method::bh};
  const auto res = run_study(s);
  REQUIRE(res.calibration.has_value());
  CHECK(std::fabs(res.calibration->pilot_rate - 0.3) <= 0.03);
  double rate = 0;
  for (const auto& r : res.records) rate += static_cast<double>(r.n_significant) / 300.0;
  rate /= static_cast<double>(res.records.size());
  CHECK(std::fabs(rate - 0.3) <= 0.03);
}

TEST_CASE("direct-p generator") {
  auto c = small_cohort(1000, 1000, 5);
  c.generator_mode = GeneratorMode::direct_p;
  const auto b = direct_p_generate(c, 0);
  CHECK(sub_alpha_rate(b) == 0.3);

  std::vector<double> sig;
  c.direct_p_shape = 1.0;
  c.target_positive_rate = 0.5;
  for (std::size_t r = 0; r < 20; ++r) {
    const auto batch = direct_p_generate(c, r);
    for (double v : batch.p_values())
      if (v < 0.05) sig.push_back(v / 0.05);
  }
  CHECK(sig.size() == 10000);
  CHECK(oracle::ks_uniform(sig) < 0.03);

  c.direct_p_shape = 0.15;
  sig.clear();
  for (std::size_t r = 0; r < 20; ++r) {
    const auto batch = direct_p_generate(c, r);
    for (double v : batch.p_values())
      if (v < 0.05) sig.push_back(v);
  }
  std::nth_element(sig.begin(), sig.begin() + sig.size() / 2, sig.end());
  const double expected = 0.05 * std::pow(0.5, 1 / 0.15);
  CHECK(expected == doctest::Approx(4.9e-4).epsilon(0.01));
  CHECK(sig[sig.size() / 2] == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("truth labels") {
  auto stream = numerics::derive_stream(1, "labels", 0);
  const auto none = assign_truth_labels(adjust::PValueBatch::from_values({0.2, 0.5, 0.06}), 0.05, 0.5, stream);
  CHECK(none.positives() == 0);

  const auto all = assign_truth_labels(adjust::PValueBatch::from_values({0.01, 0.5, 0.049}), 0.05, 1.0, stream);
  CHECK(all.is_true_positive == std::vector<std::uint8_t>{1, 0, 1});

  const auto many = assign_truth_labels(adjust::PValueBatch::from_values(std::vector<double>(10000, 0.001)),
                                        0.05, 0.5, stream);
  CHECK(std::fabs(static_cast<double>(many.positives()) / 10000.0 - 0.5) <= 0.015);

  CHECK_THROWS_AS(assign_truth_labels(adjust::PValueBatch::from_values({0.01}), 0.05, 0.0, stream), DomainError);
}

TEST_CASE("labels are independent of p-value magnitude below alpha") {
  auto s1 = numerics::derive_stream(2, "labels", 0);
  auto s2 = numerics::derive_stream(2, "labels", 0);
  std::vector<double> p1(5000), p2(5000);
  for (std::size_t i = 0; i < 5000; ++i) {
    p1[i] = 1e-8 * static_cast<double>(i + 1);
    p2[i] = 0.049 - 1e-7 * static_cast<double>(i);
  }
  const auto a = assign_truth_labels(adjust::PValueBatch::from_values(p1), 0.05, 0.5, s1);
  const auto b = assign_truth_labels(adjust::PValueBatch::from_values(p2), 0.05, 0.5, s2);
  CHECK(a.is_true_positive == b.is_true_positive);
}

TEST_CASE("study runs are deterministic and thread invariant") {
  StudyConfig s;
  s.cohort = small_cohort(100, 50, 1234);
  s.replicates = 6;
  const auto a = run_study(s, 1);
  const auto b = run_study(s, 1);
  const auto c = run_study(s, 3);
  CHECK(a.records.size() == 24);
  CHECK(same_records(a.records, b.records));
  CHECK(same_records(a.records, c.records));

  StudyConfig shorter = s;
  shorter.replicates = 3;
  const auto d = run_study(shorter, 2);
  CHECK(same_records(d.records, std::vector<metrics::ReplicateRecord>(a.records.begin(), a.records.begin() + 12)));
}

TEST_CASE("single-replicate study twice gives identical records") {
  StudyConfig s;
  s.cohort = small_cohort(200, 100, 77);
  s.replicates = 1;
  CHECK(same_records(run_study(s).records, run_study(s).records));
}

TEST_CASE("empty positive class gives undefined sensitivity") {
  StudyConfig s;
  s.cohort = small_cohort(100, 100, 3);
  s.cohort.generator_mode = GeneratorMode::direct_p;
  s.cohort.target_positive_rate = 0.001;
  s.replicates = 2;
  s.methods = {adjust::Method::bonferroni};
  const auto res = run_study(s);
  REQUIRE(res.records.size() == 2);
  for (const auto& r : res.records) {
    CHECK(r.n_significant == 0);
    CHECK_FALSE(r.sensitivity.has_value());
    CHECK(*r.specificity == 1.0);
  }
}

TEST_CASE("direct-p studies record bea diagnostics") {
  StudyConfig s;
  s.cohort = small_cohort(1000, 1000, 3);
  s.cohort.generator_mode = GeneratorMode::direct_p;
  s.replicates = 2;
  const auto res = run_study(s);
  CHECK_FALSE(res.calibration.has_value());
  for (const auto& r : res.records) {
    CHECK(r.n_significant == 300);
    if (r.method == adjust::Method::bea) {
      REQUIRE(r.m2.has_value());
      CHECK(*r.m2 == doctest::Approx(2.43));
    } else {
      CHECK_FALSE(r.m2.has_value());
    }
  }
}

TEST_CASE("pathological prevalence is a quality failure") {
  StudyConfig s;
  s.cohort = small_cohort(20, 10, 1);
  s.cohort.prevalence = 0.001;
  s.replicates = 5;
  CHECK_THROWS_AS(run_study(s), SimulationQualityError);
  CHECK_THROWS_AS(generate_cohort(s.cohort, numerics::derive_stream(1, "x", 0)), GenerationError);
}

}  // TEST_SUITE
