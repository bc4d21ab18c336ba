#ifndef DPPQUAD_ESTIMATORS_HPP_
#define DPPQUAD_ESTIMATORS_HPP_

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "dppquad/basis.hpp"
#include "dppquad/rng.hpp"
#include "dppquad/sampler.hpp"

namespace dppquad {

/// The feature matrix at the sample points is singular to working
/// precision; carries the reciprocal-condition proxy of the factorization.
struct ConditioningError : std::runtime_error {
  explicit ConditioningError(double cond)
      : std::runtime_error("EZ linear system singular to working precision"),
        condition_estimate(cond) {}
  double condition_estimate;
};

/// The sample is inconsistent with its spec (non-positive kernel diagonal).
struct CorruptSampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Test function on (-1,1)^d. `factor` and `split_at_zero` describe the
/// separable product structure used to compute reference integrals; when
/// `reference_integral` is set it takes precedence.
struct Integrand {
  std::function<double(std::span<const double>)> evaluator;
  std::string label;
  std::optional<double> reference_integral;
  std::function<double(double)> factor;  // per-dimension 1-d factor, if any
  bool split_at_zero = false;

  double operator()(std::span<const double> x) const { return evaluator(x); }
};

struct CoefficientEstimates {
  Eigen::VectorXd y;          // solution of the N x N feature-matrix system
  double condition_estimate;  // reciprocal condition proxy, > 0
};

struct QuadratureWeights {
  Eigen::VectorXd w;  // one weight per sample point; may be negative
};

/// sum_n f(x_n) / K_N(x_n, x_n); unbiased for the integral of f d(mu).
double bh_estimate(const BasisSpec& spec, const DppSample& sample,
                   const Integrand& f);

/// Solves Phi(x_{1:N}) y = f(x_{1:N}) by dense LU with row pivoting; y_k
/// estimates <f, phi_{k-1}> unbiasedly, all coordinates sharing one
/// variance and zero cross-covariance.
CoefficientEstimates ez_coefficients(const BasisSpec& spec,
                                     const DppSample& sample,
                                     const Integrand& f);

/// sqrt(mu(X)) * y_1; unbiased for the integral of f d(mu).
double ez_estimate(const BasisSpec& spec, const DppSample& sample,
                   const Integrand& f);

/// Weights w with sum_n w_n f(x_n) = ez_estimate for every f; computed by
/// solving the transposed system against the scaled first coordinate.
QuadratureWeights ez_quadrature_weights(const BasisSpec& spec,
                                        const DppSample& sample);

/// One i.i.d. draw proportional to mu: per dimension 1 - 2 Beta(a+1, b+1).
Point sample_from_mu(const JacobiParams& params, RngStream& rng);

/// mu(X) times the sample mean of f over n i.i.d. draws from mu/mu(X).
double vanilla_mc_estimate(const JacobiParams& params, int n,
                           const Integrand& f, RngStream& rng);

}  // namespace dppquad

#endif  // DPPQUAD_ESTIMATORS_HPP_
