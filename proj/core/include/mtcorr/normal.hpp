#pragma once

namespace mtc::numerics {

/// Standard normal distribution function Phi(x). Absolute error below 1e-12
/// over the whole real line. Throws DomainError for non-finite x.
double std_normal_cdf(double x);

/// Upper tail 1 - Phi(x), computed without cancellation.
double std_normal_sf(double x);

double std_normal_pdf(double x);

/// Inverse of Phi on the open interval (0, 1).
///
/// Wichura's AS241 rational approximation followed by a single Newton
/// correction against std_normal_cdf, so |Phi(z) - p| is limited by the CDF
/// itself rather than by the starting approximation.
double std_normal_quantile(double p);

/// z such that the upper tail mass beyond z equals q, i.e. quantile(1 - q),
/// without forming 1 - q for tiny q.
double std_normal_upper_quantile(double q);

}  // namespace mtc::numerics
