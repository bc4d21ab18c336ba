#include "dppquad/jacobi.hpp"

#include <cmath>
#include <stdexcept>

namespace dppquad {

RecurrenceCoeff jacobi_recurrence(int n, double a, double b) {
  if (n < 0) throw std::invalid_argument("jacobi_recurrence: n >= 0 required");
  if (!(a > -1.0 && b > -1.0))
    throw std::invalid_argument("jacobi_recurrence: a, b > -1 required");
  const double s = a + b;
  if (n == 0) {
    return {(b - a) / (s + 2.0), jacobi_mass(a, b)};
  }
  const double t = 2.0 * n + s;
  const double alpha = (b * b - a * a) / (t * (t + 2.0));
  double beta;
  if (n == 1) {
    // The generic formula is 0/0 at a + b = -1; this form is its limit and
    // agrees with it elsewhere.
    beta = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
  } else {
    beta = 4.0 * n * (n + a) * (n + b) * (n + s) /
           (t * t * (t + 1.0) * (t - 1.0));
  }
  return {alpha, beta};
}

double jacobi_mass(double a, double b) {
  return std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                  std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));
}

double jacobi_log_norm2(int n, double a, double b) {
  // h_n = 2^{a+b+1} / (2n+a+b+1) * G(n+a+1) G(n+b+1) / (G(n+a+b+1) n!).
  // At n = 0 the 1/((a+b+1) G(a+b+1)) pair is folded into 1/G(a+b+2) so the
  // a + b = -1 case stays finite.
  const double s = a + b;
  double log_h = (s + 1.0) * std::log(2.0) + std::lgamma(n + a + 1.0) +
                 std::lgamma(n + b + 1.0) - std::lgamma(n + 1.0);
  if (n == 0) {
    log_h -= std::lgamma(s + 2.0);
  } else {
    log_h -= std::log(2.0 * n + s + 1.0) + std::lgamma(n + s + 1.0);
  }
  return log_h;
}

UnivariateJacobi::UnivariateJacobi(double a, double b, int depth)
    : a_(a), b_(b) {
  if (depth < 1)
    throw std::invalid_argument("UnivariateJacobi: depth >= 1 required");
  if (!(a > -1.0 && b > -1.0))
    throw std::invalid_argument("UnivariateJacobi: a, b > -1 required");
  inv_norm_.resize(depth);
  for (int n = 0; n < depth; ++n)
    inv_norm_[n] = std::exp(-0.5 * jacobi_log_norm2(n, a, b));
}

void UnivariateJacobi::eval_into(double z, double* out) const {
  const int depth = this->depth();
  const double a = a_;
  const double b = b_;

  // Classical recurrence for P_n^{(a,b)} (Abramowitz & Stegun 22.7.1).
  double pm1 = 1.0;
  out[0] = inv_norm_[0];
  if (depth == 1) return;

  double p = 0.5 * (a + b + 2.0) * z + 0.5 * (a - b);
  out[1] = p * inv_norm_[1];
  for (int n = 2; n < depth; ++n) {
    const double t = 2.0 * n + a + b;
    const double c1 = 2.0 * n * (n + a + b) * (t - 2.0);
    const double c2 = (t - 1.0) * (a * a - b * b);
    const double c3 = (t - 2.0) * (t - 1.0) * t;
    const double c4 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * t;
    const double pn = ((c2 + c3 * z) * p - c4 * pm1) / c1;
    out[n] = pn * inv_norm_[n];
    pm1 = p;
    p = pn;
  }
}

std::vector<double> eval_univariate(double a, double b, int depth, double z) {
  UnivariateJacobi eval(a, b, depth);
  std::vector<double> out(depth);
  eval.eval_into(z, out.data());
  return out;
}

}  // namespace dppquad
