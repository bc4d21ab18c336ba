#ifndef DPPQUAD_BASIS_HPP_
#define DPPQUAD_BASIS_HPP_

#include <Eigen/Core>
#include <span>
#include <vector>

#include "dppquad/jacobi.hpp"
#include "dppquad/multi_index.hpp"

namespace dppquad {

using Point = std::vector<double>;

/// Per-dimension Jacobi exponents (a^i, b^i) of the separable base measure
/// omega(x) = prod_i (1-x^i)^{a^i} (1+x^i)^{b^i} on [-1, 1]^d.
struct JacobiParams {
  std::vector<double> a;
  std::vector<double> b;

  JacobiParams(std::vector<double> a_in, std::vector<double> b_in);

  /// Constant exponents in every dimension.
  static JacobiParams constant(int d, double a, double b);

  int dim() const { return static_cast<int>(a.size()); }

  /// True iff |a^i|, |b^i| <= 1/2 in every dimension, the range on which
  /// the rejection sampler's envelope bounds are valid.
  bool sampler_admissible() const;
};

/// Base measure density at x. Boundary coordinates with a negative exponent
/// are a domain error (the density diverges there).
double base_weight(const JacobiParams& params, std::span<const double> x);

/// mu([-1,1]^d) = prod_i 2^{a^i+b^i+1} B(a^i+1, b^i+1).
double total_mass(const JacobiParams& params);

/// The first N multivariate orthonormal Jacobi polynomials: ordering table
/// under the max-degree block order, per-dimension recurrence depths, and
/// cached univariate evaluators. Immutable after construction; all
/// evaluation goes through a per-thread FeatureEvaluator.
class BasisSpec {
 public:
  BasisSpec(JacobiParams params, int n);

  const JacobiParams& params() const { return params_; }
  int dim() const { return params_.dim(); }
  int size() const { return n_; }
  const std::vector<MultiIndex>& ordering() const { return ordering_; }
  const std::vector<int>& depth() const { return depth_; }
  const UnivariateJacobi& univariate(int i) const { return univariate_[i]; }

 private:
  JacobiParams params_;
  int n_;
  std::vector<MultiIndex> ordering_;
  std::vector<int> depth_;
  std::vector<UnivariateJacobi> univariate_;
};

/// Evaluates feature vectors Phi(x) against one BasisSpec, reusing the
/// per-dimension univariate tables across entries. Not thread-safe; give
/// each thread its own instance.
class FeatureEvaluator {
 public:
  explicit FeatureEvaluator(const BasisSpec& spec);

  /// Phi(x): entry n is prod_i phi^i_{k^i}(x^i) with k = ordering[n].
  const Eigen::VectorXd& operator()(std::span<const double> x);

  const BasisSpec& spec() const { return *spec_; }

 private:
  const BasisSpec* spec_;
  std::vector<std::vector<double>> tables_;
  Eigen::VectorXd phi_;
};

/// Feature vector as a plain vector (convenience, allocates).
std::vector<double> feature_vector(const BasisSpec& spec,
                                   std::span<const double> x);

/// K_N(x, y) = Phi(x)^T Phi(y).
double kernel(const BasisSpec& spec, std::span<const double> x,
              std::span<const double> y);

}  // namespace dppquad

#endif  // DPPQUAD_BASIS_HPP_
