#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mtcorr/adjust.hpp"
#include "mtcorr/errors.hpp"
#include "support/oracles.hpp"

using namespace mtc::adjust;

namespace {

std::vector<bool> bools(std::initializer_list<int> v) {
  std::vector<bool> out;
  for (int b : v) out.push_back(b != 0);
  return out;
}

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::fabs(got[i] - want[i]) <= tol);
}

bool subset(const std::vector<bool>& a, const std::vector<bool>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

}  // namespace

TEST_SUITE("adjust") {

TEST_CASE("batch validation") {
  CHECK_THROWS(PValueBatch::from_values({}));
  CHECK_THROWS(PValueBatch::from_values({0.1, 1.2}));
  CHECK_THROWS(PValueBatch::from_values({-0.1}));
  CHECK_THROWS(PValueBatch({0.1, 0.2}, {"a", "a"}));
  CHECK_THROWS(PValueBatch({0.1, 0.2}, {"a"}));
  const auto b = PValueBatch::from_values({0.3, 0.1, 0.3});
  CHECK(b.test_ids() == std::vector<std::string>{"t1", "t2", "t3"});
  CHECK(b.ascending_order() == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("method names round trip") {
  for (auto m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
  CHECK_FALSE(parse_method("sidak").has_value());
  CHECK(parse_cap_policy("cap-at-alpha") == CapPolicy::cap_at_alpha);
  CHECK(parse_cap_policy("uncapped") == CapPolicy::uncapped);
}

TEST_CASE("bonferroni examples") {
  const auto out = bonferroni(PValueBatch::from_values({0.004, 0.03, 0.5}), 0.05);
  CHECK(out.rejected == bools({1, 0, 0}));
  check_close(*out.adjusted_p, {0.012, 0.09, 1.0}, 1e-15);
  CHECK(out.effective_alpha == doctest::Approx(0.05 / 3));

  const auto single = bonferroni(PValueBatch::from_values({0.03}), 0.05);
  CHECK(single.rejected == bools({1}));
  CHECK((*single.adjusted_p)[0] == 0.03);

  CHECK(bonferroni(PValueBatch::from_values({1.0, 1.0}), 0.05).rejection_count() == 0);
}

TEST_CASE("holm examples") {
  const auto batch = PValueBatch::from_values({0.01, 0.02, 0.04});
  const auto out = holm(batch, 0.05);
  CHECK(out.rejected == bools({1, 1, 1}));
  CHECK(out.effective_alpha == doctest::Approx(0.05));
  CHECK(bonferroni(batch, 0.05).rejected == bools({1, 0, 0}));

  const auto single = holm(PValueBatch::from_values({0.04}), 0.05);
  CHECK(single.rejected == bools({1}));
  CHECK((*single.adjusted_p)[0] == 0.04);
}

TEST_CASE("holm stops at the first failing rank") {
  const auto out = holm(PValueBatch::from_values({0.001, 0.03, 0.012, 0.9}), 0.05);
  // thresholds 0.0125, 0.0167, 0.025: rank 3 (0.03) fails
  CHECK(out.rejected == bools({1, 0, 1, 0}));
  CHECK(out.effective_alpha == doctest::Approx(0.05 / 3));
  CHECK(holm(PValueBatch::from_values({0.5, 0.6}), 0.05).effective_alpha == 0.025);
}

TEST_CASE("bh examples") {
  const auto out = bh(PValueBatch::from_values({0.01, 0.02, 0.04}), 0.05);
  CHECK(out.rejected == bools({1, 1, 1}));
  check_close(*out.adjusted_p, {0.03, 0.03, 0.04}, 1e-15);
  CHECK(out.effective_alpha == doctest::Approx(0.05));

  const auto none = bh(PValueBatch::from_values({0.5, 0.9}), 0.05);
  CHECK(none.rejection_count() == 0);
  CHECK(none.effective_alpha == 0.025);
}

TEST_CASE("bh step-up rescues earlier ranks") {
  // 0.03 > 1*0.05/4 yet rank 4 passes 0.05, so all four go.
  const auto out = bh(PValueBatch::from_values({0.04, 0.03, 0.035, 0.05}), 0.05);
  CHECK(out.rejected == bools({1, 1, 1, 1}));
  CHECK(out.effective_alpha == doctest::Approx(0.05));
}

TEST_CASE("bea effective count examples") {
  const auto d = bea_effective_count(1000, 300, 0.8);
  CHECK(std::fabs(d.x - 5.0) <= 1e-12);
  CHECK(std::fabs(d.m2 - 2.43) <= 1e-12);
  CHECK(d.b1 == doctest::Approx(0.3));
  CHECK(d.m1 == 300.0);

  for (double beta : {0.0, 0.3, 0.8, 0.99}) {
    CHECK(bea_effective_count(500, 500, beta).m2 == 500.0);
    CHECK(bea_effective_count(500, 0, beta).m2 == 0.0);
  }
  const double near_n = bea_effective_count(1000, 300, 1e-9).m2;
  CHECK(std::fabs(near_n - 300.0) / 300.0 <= 1e-6);
  CHECK(bea_effective_count(1000, 300, 0.0).m2 == doctest::Approx(300.0));
}

TEST_CASE("bea effective count domain") {
  CHECK_THROWS_AS(bea_effective_count(10, 3, 1.0), mtc::DomainError);
  CHECK_THROWS_AS(bea_effective_count(10, 3, 1.5), mtc::DomainError);
  CHECK_THROWS_AS(bea_effective_count(10, 3, -0.1), mtc::DomainError);
  CHECK_THROWS(bea_effective_count(10, 11, 0.8));
  CHECK_THROWS(bea_effective_count(0, 0, 0.8));
  CHECK_THROWS_AS(bea(PValueBatch::from_values({0.01}), 0.05, 1.0), mtc::DomainError);
}

TEST_CASE("bea worked example with cap") {
  std::vector<double> p{0.001, 0.01, 0.02, 0.04, 0.2, 0.3, 0.5, 0.6, 0.7, 0.9};
  const auto batch = PValueBatch::from_values(p);
  const auto out = bea(batch, 0.05, 0.8, CapPolicy::cap_at_alpha);
  REQUIRE(out.diagnostics.has_value());
  const auto& d = *out.diagnostics;
  CHECK(d.n == 4);
  CHECK(std::fabs(d.m2 - 0.1024) <= 1e-12);
  CHECK(d.threshold_uncapped == doctest::Approx(0.048828125 * 10).epsilon(1e-12));
  CHECK(d.threshold_applied == 0.05);
  CHECK(d.cap_engaged);
  CHECK(out.effective_alpha == 0.05);
  CHECK(out.rejection_count() == 4);
  CHECK_FALSE(out.adjusted_p.has_value());

  const auto loose = bea(batch, 0.05, 0.8, CapPolicy::uncapped);
  CHECK(loose.effective_alpha == doctest::Approx(0.48828125));
  CHECK(loose.rejection_count() == 6);
}

TEST_CASE("bea limiting cases") {
  const auto all_small = PValueBatch::from_values({0.001, 0.02, 0.03, 0.049});
  const auto a = bea(all_small, 0.05, 0.8);
  CHECK(a.effective_alpha == 0.05 / 4);
  CHECK(a.rejected == bonferroni(all_small, 0.05).rejected);

  const auto none = bea(PValueBatch::from_values({0.05, 0.2, 0.9}), 0.05, 0.8);
  CHECK(none.rejection_count() == 0);
  CHECK(none.effective_alpha == 0.05);
  CHECK(none.diagnostics->n == 0);
}

TEST_CASE("apply dispatches") {
  const auto batch = PValueBatch::from_values({0.004, 0.03, 0.5});
  MethodParams params;
  for (auto m : kAllMethods) CHECK(apply(m, batch, params).method == m);
  CHECK(apply(Method::bh, batch, params).rejected == bh(batch, 0.05).rejected);
}

TEST_CASE("property: dominance and monotone adjusted values over random batches") {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 gen(20240612);
  std::uniform_int_distribution<std::size_t> size(1, 500);
  for (int rep = 0; rep < 1000; ++rep) {
    const auto p = oracle::mixture_batch(gen, size(gen));
    const auto batch = PValueBatch::from_values(p);
    const auto bon = bonferroni(batch, 0.05);
    const auto hol = holm(batch, 0.05);
    const auto fdr = bh(batch, 0.05);
    REQUIRE(subset(bon.rejected, hol.rejected));
    REQUIRE(subset(hol.rejected, fdr.rejected));
    REQUIRE(bon.effective_alpha <= hol.effective_alpha);

    const auto order = batch.ascending_order();
    for (const auto* out : {&hol, &fdr}) {
      const auto& adj = *out->adjusted_p;
      for (std::size_t k = 0; k < order.size(); ++k) {
        REQUIRE(adj[order[k]] >= p[order[k]]);
        REQUIRE(adj[order[k]] <= 1.0);
        if (k > 0) REQUIRE(adj[order[k]] >= adj[order[k - 1]]);
      }
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (out->rejected[i]) REQUIRE(adj[i] <= 0.05 * (1 + 1e-12));
        else REQUIRE(adj[i] >= 0.05 * (1 - 1e-12));
      }
    }
  }
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  CHECK(took.count() < 5.0);
}

TEST_CASE("property: step procedures match exhaustive inequality checks") {
  const double grid[] = {0.001, 0.01, 0.04, 0.2, 0.8};
  for (std::size_t m = 1; m <= 6; ++m) {
    std::vector<std::size_t> digits(m, 0);
    while (true) {
      std::vector<double> p(m);
      for (std::size_t i = 0; i < m; ++i) p[i] = grid[digits[i]];
      const auto batch = PValueBatch::from_values(p);
      REQUIRE(holm(batch, 0.05).rejected == oracle::holm_by_counting(p, 0.05));
      REQUIRE(bh(batch, 0.05).rejected == oracle::bh_by_counting(p, 0.05));
      std::size_t i = 0;
      while (i < m && ++digits[i] == 5) digits[i++] = 0;
      if (i == m) break;
    }
  }
}

TEST_CASE("property: bh and holm agree with counting oracles on random batches") {
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::size_t> size(1, 60);
  for (int rep = 0; rep < 300; ++rep) {
    const auto p = oracle::mixture_batch(gen, size(gen));
    const auto batch = PValueBatch::from_values(p);
    REQUIRE(holm(batch, 0.05).rejected == oracle::holm_by_counting(p, 0.05));
    REQUIRE(bh(batch, 0.05).rejected == oracle::bh_by_counting(p, 0.05));
  }
}

TEST_CASE("property: bea threshold nondecreasing in beta") {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<std::size_t> size(1, 300);
  for (int rep = 0; rep < 200; ++rep) {
    const auto p = oracle::mixture_batch(gen, size(gen));
    const auto batch = PValueBatch::from_values(p);
    double previous = 0.0;
    std::size_t previous_count = 0;
    for (double beta = 0.0; beta < 0.96; beta += 0.05) {
      const auto out = bea(batch, 0.05, beta, CapPolicy::uncapped);
      const auto& d = *out.diagnostics;
      if (d.n == 0) break;
      REQUIRE(d.threshold_uncapped >= previous);
      REQUIRE(out.rejection_count() >= previous_count);
      if (d.n == d.m0) REQUIRE(d.threshold_uncapped == 0.05 / static_cast<double>(d.m0));
      previous = d.threshold_uncapped;
      previous_count = out.rejection_count();
    }
  }
}

TEST_CASE("property: capped bea never rejects p >= alpha and is permutation equivariant") {
  std::mt19937_64 gen(13);
  std::uniform_int_distribution<std::size_t> size(2, 200);
  for (int rep = 0; rep < 200; ++rep) {
    auto p = oracle::mixture_batch(gen, size(gen));
    const auto out = bea(PValueBatch::from_values(p), 0.05, 0.8);
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i] >= 0.05) REQUIRE_FALSE(out.rejected[i]);

    std::vector<std::size_t> perm(p.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[perm[i]];
    for (auto method : kAllMethods) {
      const auto a = apply(method, PValueBatch::from_values(p), {});
      const auto b = apply(method, PValueBatch::from_values(q), {});
      for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(b.rejected[i] == a.rejected[perm[i]]);
      REQUIRE(a.effective_alpha == b.effective_alpha);
    }
  }
}

}  // TEST_SUITE
