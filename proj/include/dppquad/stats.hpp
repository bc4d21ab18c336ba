#ifndef DPPQUAD_STATS_HPP_
#define DPPQUAD_STATS_HPP_

#include <functional>
#include <span>
#include <vector>

namespace dppquad {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  bool degenerate = false;
  /// p-values use the asymptotic Kolmogorov series; for ks_normal the
  /// reference parameters are estimated from the sample, so the p-value is
  /// approximate by construction.
  bool approximate = true;
};

/// Survival function of the Kolmogorov distribution,
/// Q(lambda) = 2 sum_j (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_sf(double lambda);

/// One-sample KS statistic of `values` against the normal with the sample's
/// own mean and standard deviation. Requires >= 20 values; zero spread sets
/// the degeneracy flag.
KsResult ks_normal(std::span<const double> values);

/// Two-sample KS test.
KsResult ks_two_sample(std::span<const double> xs, std::span<const double> ys);

/// One-sample KS against an arbitrary CDF.
KsResult ks_test_cdf(std::span<const double> values,
                     const std::function<double(double)>& cdf);

double normal_cdf(double z);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Survival function of the chi-square distribution with dof degrees.
double chi2_sf(double x, int dof);

struct SlopeFit {
  double slope = 0.0;
  double r2 = 0.0;
  int used = 0;
  int skipped = 0;  // non-positive variances dropped from the fit
};

/// Least-squares line through (log10 N, log10 var). Needs >= 3 positive
/// variances.
SlopeFit fit_loglog_slope(std::span<const double> ns,
                          std::span<const double> variances);

struct Summary {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double median = 0.0;
  double iqr = 0.0;
  std::size_t count = 0;
};

Summary summarize(std::span<const double> values);

}  // namespace dppquad

#endif  // DPPQUAD_STATS_HPP_
