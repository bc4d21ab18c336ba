#include "dppquad/estimators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

namespace dppquad {

namespace {

// Factorization of the feature matrix at the sample points, shared by the
// coefficient solve and the transposed weight solve. The condition proxy is
// the LU pivot ratio min|U_ii| / max|U_ii|, which stays meaningful on
// exactly singular input.
struct FeatureSystem {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double rcond;
};

FeatureSystem factor_feature_matrix(const BasisSpec& spec,
                                    const DppSample& sample) {
  const int n = spec.size();
  if (static_cast<int>(sample.points.size()) != n)
    throw std::invalid_argument("sample size does not match spec");
  FeatureEvaluator eval(spec);
  Eigen::MatrixXd feat(n, n);
  for (int i = 0; i < n; ++i) feat.row(i) = eval(sample.points[i]);
  FeatureSystem sys{Eigen::PartialPivLU<Eigen::MatrixXd>(feat), 0.0};
  double pivot_min = std::numeric_limits<double>::infinity();
  double pivot_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = std::abs(sys.lu.matrixLU()(i, i));
    pivot_min = std::min(pivot_min, p);
    pivot_max = std::max(pivot_max, p);
  }
  sys.rcond = pivot_max > 0.0 ? pivot_min / pivot_max : 0.0;
  if (!(sys.rcond > std::numeric_limits<double>::epsilon()))
    throw ConditioningError(sys.rcond);
  return sys;
}

}  // namespace

double bh_estimate(const BasisSpec& spec, const DppSample& sample,
                   const Integrand& f) {
  FeatureEvaluator eval(spec);
  double acc = 0.0;
  for (const Point& x : sample.points) {
    const double kxx = eval(x).squaredNorm();
    if (!(kxx > 0.0))
      throw CorruptSampleError("non-positive kernel diagonal at sample point");
    acc += f(x) / kxx;
  }
  return acc;
}

CoefficientEstimates ez_coefficients(const BasisSpec& spec,
                                     const DppSample& sample,
                                     const Integrand& f) {
  const int n = spec.size();
  FeatureSystem sys = factor_feature_matrix(spec, sample);
  Eigen::VectorXd rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = f(sample.points[i]);
  CoefficientEstimates out{sys.lu.solve(rhs), sys.rcond};
  if (!out.y.allFinite()) throw ConditioningError(sys.rcond);
  return out;
}

double ez_estimate(const BasisSpec& spec, const DppSample& sample,
                   const Integrand& f) {
  const CoefficientEstimates c = ez_coefficients(spec, sample, f);
  return std::sqrt(total_mass(spec.params())) * c.y[0];
}

QuadratureWeights ez_quadrature_weights(const BasisSpec& spec,
                                        const DppSample& sample) {
  const int n = spec.size();
  FeatureSystem sys = factor_feature_matrix(spec, sample);
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(n);
  e1[0] = std::sqrt(total_mass(spec.params()));
  QuadratureWeights out{sys.lu.transpose().solve(e1)};
  if (!out.w.allFinite()) throw ConditioningError(sys.rcond);
  return out;
}

Point sample_from_mu(const JacobiParams& params, RngStream& rng) {
  Point x(params.dim());
  for (int i = 0; i < params.dim(); ++i)
    x[i] = 1.0 - 2.0 * rng.beta(params.a[i] + 1.0, params.b[i] + 1.0);
  return x;
}

double vanilla_mc_estimate(const JacobiParams& params, int n,
                           const Integrand& f, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("vanilla_mc_estimate: n >= 1");
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += f(sample_from_mu(params, rng));
  return total_mass(params) * acc / n;
}

}  // namespace dppquad
