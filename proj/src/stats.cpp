#include "dppquad/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace dppquad {

double kolmogorov_sf(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.04) return 1.0;  // series is 1 to double precision
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += sign * term;
    sign = -sign;
    if (term < 1e-16 * std::max(sum, 1e-300)) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z * M_SQRT1_2); }

KsResult ks_test_cdf(std::span<const double> values,
                     const std::function<double(double)>& cdf) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  KsResult out;
  out.statistic = d;
  out.p_value = kolmogorov_sf(std::sqrt(n) * d);
  return out;
}

KsResult ks_normal(std::span<const double> values) {
  if (values.size() < 20)
    throw std::invalid_argument("ks_normal: need at least 20 values");
  const Summary s = summarize(values);
  if (!(s.variance > 0.0)) {
    KsResult out;
    out.degenerate = true;
    return out;
  }
  const double mu = s.mean;
  const double sd = std::sqrt(s.variance);
  return ks_test_cdf(values,
                     [mu, sd](double x) { return normal_cdf((x - mu) / sd); });
}

KsResult ks_two_sample(std::span<const double> xs,
                       std::span<const double> ys) {
  if (xs.empty() || ys.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> a(xs.begin(), xs.end());
  std::vector<double> b(ys.begin(), ys.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  KsResult out;
  out.statistic = d;
  out.p_value = kolmogorov_sf(std::sqrt(na * nb / (na + nb)) * d);
  return out;
}

double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad args");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) {
    // series representation
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  // continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
  return 1.0 - q;
}

double chi2_sf(double x, int dof) {
  if (dof < 1) throw std::invalid_argument("chi2_sf: dof >= 1");
  if (x <= 0.0) return 1.0;
  return 1.0 - gamma_p(0.5 * dof, 0.5 * x);
}

SlopeFit fit_loglog_slope(std::span<const double> ns,
                          std::span<const double> variances) {
  if (ns.size() != variances.size())
    throw std::invalid_argument("fit_loglog_slope: size mismatch");
  std::vector<double> lx, ly;
  SlopeFit fit;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(variances[i] > 0.0) || !std::isfinite(variances[i])) {
      ++fit.skipped;
      continue;
    }
    lx.push_back(std::log10(ns[i]));
    ly.push_back(std::log10(variances[i]));
  }
  fit.used = static_cast<int>(lx.size());
  if (fit.used < 3)
    throw std::invalid_argument(
        "fit_loglog_slope: need at least 3 positive variances");
  const double n = static_cast<double>(fit.used);
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < fit.used; ++i) {
    sx += lx[i];
    sy += ly[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < fit.used; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  s.count = values.size();
  if (values.empty()) return s;
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double v : sorted) sum += v;
  s.mean = sum / s.count;
  double ss = 0.0;
  for (double v : sorted) ss += (v - s.mean) * (v - s.mean);
  s.variance = s.count > 1 ? ss / (s.count - 1) : 0.0;
  const auto quantile = [&](double q) {
    const double pos = q * (s.count - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const double frac = pos - lo;
    return lo + 1 < s.count ? sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac
                            : sorted[lo];
  };
  s.median = quantile(0.5);
  s.iqr = quantile(0.75) - quantile(0.25);
  return s;
}

}  // namespace dppquad
