#include "dppquad/integrands.hpp"

#include <cmath>

#include "dppquad/quadrature.hpp"

namespace dppquad {

namespace {

Integrand product_integrand(std::function<double(double)> factor,
                            std::string label, bool split) {
  Integrand f;
  f.factor = factor;
  f.label = std::move(label);
  f.split_at_zero = split;
  f.evaluator = [factor](std::span<const double> x) {
    double v = 1.0;
    for (double xi : x) v *= factor(xi);
    return v;
  };
  return f;
}

}  // namespace

Integrand bump(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("bump: eps in (0,1) required");
  const double cut = 1.0 - eps;
  auto factor = [cut](double z) {
    const double denom = cut - z * z;
    return denom > 0.0 ? std::exp(-1.0 / denom) : 0.0;
  };
  return product_integrand(factor, "bump", false);
}

Integrand eig_sum(std::shared_ptr<const BasisSpec> basis, int m) {
  if (!basis) throw std::invalid_argument("eig_sum: basis required");
  if (m < 1 || m > basis->size())
    throw std::invalid_argument("eig_sum: need 1 <= m <= basis size");
  Integrand f;
  f.label = "eigsum";
  f.reference_integral = std::sqrt(total_mass(basis->params()));
  f.evaluator = [basis, m](std::span<const double> x) {
    FeatureEvaluator eval(*basis);
    const Eigen::VectorXd& phi = eval(x);
    double acc = 0.0;
    for (int n = 0; n < m; ++n) acc += phi[n] / (n + 1.0);
    return acc;
  };
  return f;
}

Integrand abs_prod() {
  return product_integrand([](double z) { return std::abs(z); }, "abs", true);
}

Integrand heaviside_centered() {
  return product_integrand([](double z) { return z > 0.0 ? 1.0 : -1.0; },
                           "heaviside", true);
}

Integrand cosine_prod() {
  return product_integrand([](double z) { return std::cos(M_PI * z); },
                           "cosine", false);
}

Integrand mix() {
  auto factor = [](double z) {
    if (z <= 0.0) return 0.0;
    return std::cos(M_PI * z) + std::cos(2.0 * M_PI * z) +
           std::sin(5.0 * M_PI * z);
  };
  return product_integrand(factor, "mix", true);
}

Integrand integrand_by_label(const std::string& label, double bump_eps,
                             std::shared_ptr<const BasisSpec> eigsum_basis) {
  if (label == "bump") return bump(bump_eps);
  if (label == "abs") return abs_prod();
  if (label == "heaviside") return heaviside_centered();
  if (label == "cosine") return cosine_prod();
  if (label == "mix") return mix();
  if (label == "eigsum") {
    if (!eigsum_basis)
      throw std::invalid_argument("eigsum integrand needs a basis");
    return eig_sum(eigsum_basis, eigsum_basis->size());
  }
  throw std::invalid_argument("unknown integrand label: " + label);
}

double reference_integral(const Integrand& f, const JacobiParams& params,
                          int m) {
  if (f.reference_integral) return *f.reference_integral;
  if (!f.factor)
    throw std::invalid_argument(
        "reference_integral: no analytic value and no separable factor");
  double truth = 1.0;
  for (int i = 0; i < params.dim(); ++i) {
    truth *= f.split_at_zero
                 ? integrate_weighted_split_1d(f.factor, params.a[i],
                                               params.b[i], m)
                 : integrate_weighted_1d(f.factor, params.a[i], params.b[i], m);
  }
  return truth;
}

}  // namespace dppquad
