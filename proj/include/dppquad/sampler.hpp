#ifndef DPPQUAD_SAMPLER_HPP_
#define DPPQUAD_SAMPLER_HPP_

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dppquad/basis.hpp"
#include "dppquad/rng.hpp"

namespace dppquad {

/// A proposed point whose residual feature direction vanished numerically
/// (probability zero event); the chain resamples instead of dying.
struct DegeneratePointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An evaluated acceptance ratio exceeded its envelope bound by more than
/// numerical slack. This never happens with a correct bound.
struct BoundViolationError : std::logic_error {
  using std::logic_error::logic_error;
};

struct DppSample {
  enum class Method { kChainRule, kTridiagonal };

  std::vector<Point> points;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t rejections_marginal = 0;
  std::uint64_t rejections_conditional = 0;
  Method method = Method::kChainRule;

  std::uint64_t total_rejections() const {
    return rejections_marginal + rejections_conditional;
  }
};

/// Orthonormalized residual feature directions of the points accepted so
/// far in one chain-rule run.
class GramSchmidtState {
 public:
  explicit GramSchmidtState(int feature_dim, int capacity);

  int count() const { return count_; }

  /// feature_dim x count(), orthonormal columns.
  Eigen::Ref<const Eigen::MatrixXd> directions() const {
    return directions_.leftCols(count_);
  }
  const std::vector<Point>& points() const { return points_; }

  /// (K(x,x) - ||projection of phi onto the directions||^2) / K(x,x),
  /// clamped to [0, 1]. Throws BoundViolationError beyond 1 + slack.
  double acceptance_ratio(const Eigen::VectorXd& phi) const;

  /// Appends the normalized residual of phi. One re-orthogonalization pass
  /// when the residual drops below 1e-6 of ||phi||; below 1e-12 the point
  /// is degenerate.
  void add_point(Point x, const Eigen::VectorXd& phi);

 private:
  Eigen::MatrixXd directions_;
  std::vector<Point> points_;
  int count_ = 0;
};

/// One draw from the equilibrium (arcsine) proposal: x^i = cos(pi U^i).
Point sample_arcsine(RngStream& rng, int d);

/// Envelope constant C_k >= sup_x pi (1-x)^{a+1/2} (1+x)^{b+1/2} phi_k(x)^2
/// for |a|, |b| <= 1/2. Exact supremum at k = 0, Chow-Gautschi bound for
/// k >= 1.
double component_bound(std::uint32_t k, double a, double b);

struct ProposalDraw {
  Point x;
  std::uint64_t rejections = 0;
};

/// One draw from phi_k(x)^2 omega(x) dx by rejection against the arcsine
/// proposal with constant prod_i C_{k^i}.
ProposalDraw sample_component(const MultiIndex& k, const JacobiParams& params,
                              RngStream& rng);

/// One draw from the marginal N^{-1} K_N(x,x) omega(x) dx, as the uniform
/// mixture of the N component densities.
ProposalDraw sample_marginal(const BasisSpec& spec, RngStream& rng);

/// Convenience wrappers taking a BasisSpec; they allocate an evaluator per
/// call, so prefer the member methods in hot loops.
double conditional_acceptance(const GramSchmidtState& state,
                              const BasisSpec& spec,
                              std::span<const double> x);
void update_state(GramSchmidtState& state, const BasisSpec& spec,
                  std::span<const double> x);

/// Chain-rule sampler for one BasisSpec: marginal-mixture outer proposal
/// with constant N/(N-n+1), arcsine inner proposal with the component
/// bounds. Reuses evaluator scratch across draws; one instance per thread.
class ChainRuleSampler {
 public:
  explicit ChainRuleSampler(const BasisSpec& spec);

  DppSample sample(RngStream& rng);

  /// Marginal draw reusing this sampler's scratch.
  ProposalDraw draw_marginal(RngStream& rng);

 private:
  ProposalDraw draw_component(int ordering_index, RngStream& rng);

  const BasisSpec* spec_;
  FeatureEvaluator eval_;
  std::vector<double> bounds_;  // prod_i C_{k^i} per ordering index
  std::vector<std::vector<double>> tables_;
};

/// Exact multivariate Jacobi ensemble sample via the chain rule (any d,
/// sampler-admissible parameters).
DppSample sample_projection_dpp(const BasisSpec& spec, RngStream& rng);

/// Exact univariate Jacobi ensemble sample (any a, b > -1) as the
/// eigenvalues of the random symmetric tridiagonal matrix built from
/// Beta-distributed recurrence entries. Rejection-free, O(N^2).
DppSample sample_univariate_tridiagonal(int n, double a, double b,
                                        RngStream& rng);

}  // namespace dppquad

#endif  // DPPQUAD_SAMPLER_HPP_
