#ifndef DPPQUAD_QUADRATURE_HPP_
#define DPPQUAD_QUADRATURE_HPP_

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dppquad/basis.hpp"

namespace dppquad {

/// Thrown when a requested deterministic computation exceeds its node cap.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 1-d rule: nodes in (-1,1) sorted ascending, strictly positive weights,
/// exact for polynomials up to degree 2M-1 against (1-x)^a (1+x)^b dx.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch: nodes are the eigenvalues of the M x M symmetric Jacobi
/// matrix of recurrence coefficients; weights are 1/K_M(x_n, x_n) with
/// K_M the order-M projection kernel of the same weight.
QuadratureRule gauss_jacobi_rule(int m, double a, double b);

/// integral of g(x) (1-x)^a (1+x)^b over [-1,1] by the M-point rule.
double integrate_weighted_1d(const std::function<double(double)>& g, double a,
                             double b, int m);

/// Same integral, with the rule split at 0 into two mapped Gauss-Jacobi
/// sub-rules. Use for integrands with a kink or jump at 0; each sub-rule
/// still treats the endpoint weight singularities exactly.
double integrate_weighted_split_1d(const std::function<double(double)>& g,
                                   double a, double b, int m);

/// Full tensor-product rule for the separable d-dimensional base measure.
struct TensorRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
};

/// Product of per-dimension Gauss-Jacobi rules; errors out beyond the node
/// cap (default 10^6).
TensorRule tensor_quadrature(const JacobiParams& params, int m_per_dim,
                             std::size_t node_cap = 1000000);

using RealFunction = std::function<double(std::span<const double>)>;

double integrate(const TensorRule& rule, const RealFunction& f);

/// <f, g> in L2(mu) by the tensor rule.
double inner_product(const RealFunction& f, const RealFunction& g,
                     const JacobiParams& params, int m_per_dim);

/// ||f||^2 - sum_{l<N} <f, phi_l>^2: the common variance of all EZ
/// coefficient estimates. Small negative residuals (below quadrature
/// error) clamp to 0; larger ones are an inconsistency error.
double ez_variance_predict(const RealFunction& f, const BasisSpec& spec,
                           int m_per_dim);

/// Exact variance of the BH estimator: the symmetrized double integral of
/// (f/K - f/K)^2 K^2 over mu x mu, evaluated on the M^2 product rule.
/// d = 1 only.
double bh_variance_predict(const RealFunction& f, const BasisSpec& spec,
                           int m);

/// Both sides of the generalized Cauchy-Binet identity for 1-d functions:
/// lhs = det(<phi_k, psi_l>), rhs = (1/N!) integral of det Phi det Psi over
/// mu^{x N}, by tensor quadrature over N copies of [-1,1].
struct CauchyBinetCheck {
  double lhs;
  double rhs;
  double residual() const { return std::abs(lhs - rhs); }
};

CauchyBinetCheck cauchy_binet_check(
    const std::vector<std::function<double(double)>>& phis,
    const std::vector<std::function<double(double)>>& psis, double a, double b,
    int m, std::size_t node_cap = 1000000);

}  // namespace dppquad

#endif  // DPPQUAD_QUADRATURE_HPP_
