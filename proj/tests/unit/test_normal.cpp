#include <doctest.h>

#include <cmath>
#include <limits>

#include "mtcorr/errors.hpp"
#include "mtcorr/normal.hpp"
#include "support/oracles.hpp"

using namespace mtc::numerics;

TEST_SUITE("numerics") {

TEST_CASE("normal cdf examples") {
  CHECK(std_normal_cdf(0.0) == 0.5);
  CHECK(std::fabs(oracle::normal_cdf(1.959964) - 0.975) <= 1e-6);
  CHECK(std::fabs(std_normal_cdf(1.959964) - 0.975) <= 1e-6);
  CHECK(std::fabs(std_normal_cdf(-1.3) + std_normal_cdf(1.3) - 1.0) <= 1e-12);
}

TEST_CASE("normal cdf matches 50-digit erf on [-8, 8]") {
  double worst = 0.0;
  double previous = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = -8.0 + 16.0 * i / 9999.0;
    const double got = std_normal_cdf(x);
    worst = std::max(worst, std::fabs(got - oracle::normal_cdf(x)));
    CHECK(got >= previous);
    previous = got;
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("normal cdf rejects non-finite input") {
  CHECK_THROWS_AS(std_normal_cdf(std::numeric_limits<double>::quiet_NaN()), mtc::DomainError);
  CHECK_THROWS_AS(std_normal_cdf(INFINITY), mtc::DomainError);
  CHECK_THROWS_AS(std_normal_sf(-INFINITY), mtc::DomainError);
}

TEST_CASE("normal quantile examples") {
  CHECK(std_normal_quantile(0.5) == 0.0);
  CHECK(std::fabs(oracle::normal_quantile(0.975) - 1.959964) <= 1e-6);
  CHECK(std::fabs(std_normal_quantile(0.975) - 1.959964) <= 1e-6);
  CHECK(std::fabs(std_normal_quantile(std_normal_cdf(0.7)) - 0.7) <= 1e-9);
}

TEST_CASE("normal quantile accuracy and round trip") {
  double worst_round_trip = 0.0;
  double worst_vs_oracle = 0.0;
  double previous = -INFINITY;
  for (int i = 0; i < 1000; ++i) {
    const double p = 1e-6 + (1.0 - 2e-6) * i / 999.0;
    const double z = std_normal_quantile(p);
    CHECK(z > previous);
    previous = z;
    worst_round_trip = std::max(worst_round_trip, std::fabs(std_normal_cdf(z) - p));
    worst_vs_oracle = std::max(worst_vs_oracle, std::fabs(oracle::normal_cdf(z) - p));
  }
  CHECK(worst_round_trip <= 1e-10);
  CHECK(worst_vs_oracle <= 1e-12);
}

TEST_CASE("normal quantile deep tails") {
  for (double p : {1e-300, 1e-100, 1e-20, 1e-10}) {
    const double z = std_normal_quantile(p);
    CHECK(std::fabs(std_normal_cdf(z) - p) <= 1e-12);
    CHECK(std_normal_sf(-z) == doctest::Approx(p).epsilon(1e-12));
    CHECK(std_normal_upper_quantile(p) == -z);
  }
}

TEST_CASE("normal quantile domain") {
  CHECK_THROWS_AS(std_normal_quantile(0.0), mtc::DomainError);
  CHECK_THROWS_AS(std_normal_quantile(1.0), mtc::DomainError);
  CHECK_THROWS_AS(std_normal_quantile(-0.1), mtc::DomainError);
  CHECK_THROWS_AS(std_normal_quantile(std::numeric_limits<double>::quiet_NaN()), mtc::DomainError);
}

}  // TEST_SUITE
