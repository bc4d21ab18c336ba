#include "dppquad/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dppquad/tridiagonal.hpp"

namespace dppquad {

QuadratureRule gauss_jacobi_rule(int m, double a, double b) {
  if (m < 1) throw std::invalid_argument("gauss_jacobi_rule: M >= 1 required");
  std::vector<double> diag(m);
  std::vector<double> off(m - 1);
  for (int n = 0; n < m; ++n) diag[n] = jacobi_recurrence(n, a, b).alpha;
  for (int n = 1; n < m; ++n)
    off[n - 1] = std::sqrt(jacobi_recurrence(n, a, b).beta);

  QuadratureRule rule;
  rule.nodes = tridiagonal_eigenvalues(std::move(diag), std::move(off));

  // Weights through the kernel diagonal: w_n = 1 / sum_{k<M} phi_k(x_n)^2.
  UnivariateJacobi eval(a, b, m);
  std::vector<double> vals(m);
  rule.weights.resize(m);
  for (int n = 0; n < m; ++n) {
    eval.eval_into(rule.nodes[n], vals.data());
    double k = 0.0;
    for (double v : vals) k += v * v;
    rule.weights[n] = 1.0 / k;
  }
  return rule;
}

double integrate_weighted_1d(const std::function<double(double)>& g, double a,
                             double b, int m) {
  const QuadratureRule rule = gauss_jacobi_rule(m, a, b);
  double s = 0.0;
  for (int n = 0; n < m; ++n) s += rule.weights[n] * g(rule.nodes[n]);
  return s;
}

double integrate_weighted_split_1d(const std::function<double(double)>& g,
                                   double a, double b, int m) {
  // [0,1]: x = (1+t)/2, weight (1-x)^a = ((1-t)/2)^a smooth rest.
  const QuadratureRule right = gauss_jacobi_rule(m, a, 0.0);
  double s = 0.0;
  for (int n = 0; n < m; ++n) {
    const double t = right.nodes[n];
    const double x = 0.5 * (1.0 + t);
    s += right.weights[n] * g(x) * std::pow(0.5, a) *
         std::pow(0.5 * (3.0 + t), b) * 0.5;
  }
  // [-1,0]: x = (t-1)/2, weight (1+x)^b = ((1+t)/2)^b smooth rest.
  const QuadratureRule left = gauss_jacobi_rule(m, 0.0, b);
  for (int n = 0; n < m; ++n) {
    const double t = left.nodes[n];
    const double x = 0.5 * (t - 1.0);
    s += left.weights[n] * g(x) * std::pow(0.5, b) *
         std::pow(0.5 * (3.0 - t), a) * 0.5;
  }
  return s;
}

TensorRule tensor_quadrature(const JacobiParams& params, int m_per_dim,
                             std::size_t node_cap) {
  const int d = params.dim();
  double total = std::pow(static_cast<double>(m_per_dim), d);
  if (total > static_cast<double>(node_cap))
    throw BudgetError("tensor_quadrature: node budget exceeded");

  std::vector<QuadratureRule> rules;
  rules.reserve(d);
  for (int i = 0; i < d; ++i)
    rules.push_back(gauss_jacobi_rule(m_per_dim, params.a[i], params.b[i]));

  TensorRule rule;
  const std::size_t count = static_cast<std::size_t>(total);
  rule.nodes.reserve(count);
  rule.weights.reserve(count);
  std::vector<int> idx(d, 0);
  Point x(d);
  for (;;) {
    double w = 1.0;
    for (int i = 0; i < d; ++i) {
      x[i] = rules[i].nodes[idx[i]];
      w *= rules[i].weights[idx[i]];
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(w);
    int i = d - 1;
    while (i >= 0 && ++idx[i] == m_per_dim) idx[i--] = 0;
    if (i < 0) break;
  }
  return rule;
}

double integrate(const TensorRule& rule, const RealFunction& f) {
  double s = 0.0;
  for (std::size_t n = 0; n < rule.nodes.size(); ++n)
    s += rule.weights[n] * f(rule.nodes[n]);
  return s;
}

double inner_product(const RealFunction& f, const RealFunction& g,
                     const JacobiParams& params, int m_per_dim) {
  const TensorRule rule = tensor_quadrature(params, m_per_dim);
  double s = 0.0;
  for (std::size_t n = 0; n < rule.nodes.size(); ++n)
    s += rule.weights[n] * f(rule.nodes[n]) * g(rule.nodes[n]);
  return s;
}

double ez_variance_predict(const RealFunction& f, const BasisSpec& spec,
                           int m_per_dim) {
  const TensorRule rule = tensor_quadrature(spec.params(), m_per_dim);
  FeatureEvaluator eval(spec);
  double norm2 = 0.0;
  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(spec.size());
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double fv = f(rule.nodes[n]);
    norm2 += rule.weights[n] * fv * fv;
    coeffs += (rule.weights[n] * fv) * eval(rule.nodes[n]);
  }
  const double residual = norm2 - coeffs.squaredNorm();
  if (residual < 0.0) {
    const double tol = 1e-8 * (1.0 + norm2);
    if (residual < -tol)
      throw std::runtime_error(
          "ez_variance_predict: residual negative beyond quadrature error");
    return 0.0;
  }
  return residual;
}

double bh_variance_predict(const RealFunction& f, const BasisSpec& spec,
                           int m) {
  if (spec.dim() != 1)
    throw BudgetError("bh_variance_predict: d = 1 only");
  const QuadratureRule rule =
      gauss_jacobi_rule(m, spec.params().a[0], spec.params().b[0]);

  // Feature matrix at the nodes; K = F F^T row by row.
  FeatureEvaluator eval(spec);
  Eigen::MatrixXd feat(m, spec.size());
  Eigen::VectorXd u(m);
  for (int n = 0; n < m; ++n) {
    const double x = rule.nodes[n];
    feat.row(n) = eval(std::span<const double>(&x, 1));
    const double kxx = feat.row(n).squaredNorm();
    u[n] = f(std::span<const double>(&x, 1)) / kxx;
  }
  double var = 0.0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double kij = feat.row(i).dot(feat.row(j));
      const double du = u[i] - u[j];
      var += 0.5 * rule.weights[i] * rule.weights[j] * du * du * kij * kij;
    }
  }
  return var;
}

CauchyBinetCheck cauchy_binet_check(
    const std::vector<std::function<double(double)>>& phis,
    const std::vector<std::function<double(double)>>& psis, double a, double b,
    int m, std::size_t node_cap) {
  const int n = static_cast<int>(phis.size());
  if (n < 1 || psis.size() != phis.size())
    throw std::invalid_argument("cauchy_binet_check: need matching columns");
  if (std::pow(static_cast<double>(m), n) > static_cast<double>(node_cap))
    throw BudgetError("cauchy_binet_check: node budget exceeded");

  const QuadratureRule rule = gauss_jacobi_rule(m, a, b);

  Eigen::MatrixXd gram(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int q = 0; q < m; ++q)
        s += rule.weights[q] * phis[k](rule.nodes[q]) * psis[l](rule.nodes[q]);
      gram(k, l) = s;
    }
  }
  const double lhs = gram.determinant();

  // Tabulate columns once, then walk the N-fold product grid.
  Eigen::MatrixXd phi_tab(m, n), psi_tab(m, n);
  for (int q = 0; q < m; ++q) {
    for (int k = 0; k < n; ++k) {
      phi_tab(q, k) = phis[k](rule.nodes[q]);
      psi_tab(q, k) = psis[k](rule.nodes[q]);
    }
  }
  double rhs = 0.0;
  std::vector<int> idx(n, 0);
  Eigen::MatrixXd mphi(n, n), mpsi(n, n);
  for (;;) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      w *= rule.weights[idx[i]];
      mphi.row(i) = phi_tab.row(idx[i]);
      mpsi.row(i) = psi_tab.row(idx[i]);
    }
    rhs += w * mphi.determinant() * mpsi.determinant();
    int i = n - 1;
    while (i >= 0 && ++idx[i] == m) idx[i--] = 0;
    if (i < 0) break;
  }
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  rhs /= factorial;
  return {lhs, rhs};
}

}  // namespace dppquad
