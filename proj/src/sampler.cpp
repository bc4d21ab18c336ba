#include "dppquad/sampler.hpp"

#include <cmath>

#include "dppquad/tridiagonal.hpp"

namespace dppquad {

namespace {

constexpr double kBoundSlack = 1e-9;
constexpr double kReorthThreshold = 1e-6;
constexpr double kDegenerateThreshold = 1e-12;

}  // namespace

GramSchmidtState::GramSchmidtState(int feature_dim, int capacity)
    : directions_(feature_dim, capacity) {
  points_.reserve(capacity);
}

double GramSchmidtState::acceptance_ratio(const Eigen::VectorXd& phi) const {
  const double kxx = phi.squaredNorm();
  if (!(kxx > 0.0)) return 0.0;
  double proj2 = 0.0;
  if (count_ > 0) proj2 = (directions_.leftCols(count_).transpose() * phi).squaredNorm();
  const double ratio = (kxx - proj2) / kxx;
  if (ratio > 1.0 + kBoundSlack)
    throw BoundViolationError(
        "conditional acceptance ratio exceeded its bound");
  return std::clamp(ratio, 0.0, 1.0);
}

void GramSchmidtState::add_point(Point x, const Eigen::VectorXd& phi) {
  if (count_ >= directions_.cols())
    throw std::logic_error("GramSchmidtState: capacity exhausted");
  const double norm_phi = phi.norm();
  Eigen::VectorXd r = phi;
  if (count_ > 0) {
    const auto dirs = directions_.leftCols(count_);
    r.noalias() -= dirs * (dirs.transpose() * phi);
    if (r.norm() < kReorthThreshold * norm_phi)
      r.noalias() -= dirs * (dirs.transpose() * r);
  }
  const double rnorm = r.norm();
  if (rnorm < kDegenerateThreshold * norm_phi)
    throw DegeneratePointError("residual feature direction vanished");
  directions_.col(count_) = r / rnorm;
  points_.push_back(std::move(x));
  ++count_;
}

Point sample_arcsine(RngStream& rng, int d) {
  Point x(d);
  for (int i = 0; i < d; ++i) x[i] = std::cos(M_PI * rng.uniform());
  return x;
}

double component_bound(std::uint32_t k, double a, double b) {
  if (std::abs(a) > 0.5 || std::abs(b) > 0.5)
    throw std::invalid_argument("component_bound: |a|, |b| <= 1/2 required");
  if (k == 0) {
    // Exact supremum: evaluate at the mode of (1-x)^{a+1/2} (1+x)^{b+1/2}.
    const double s = a + b + 1.0;
    const double m = s == 0.0 ? 0.0 : (b - a) / s;
    return M_PI * std::pow(1.0 - m, a + 0.5) * std::pow(1.0 + m, b + 0.5) /
           jacobi_mass(a, b);
  }
  const double mx = std::max(a, b);
  const double mn = std::min(a, b);
  const double kk = static_cast<double>(k);
  const double lg = std::log(2.0) + std::lgamma(kk + a + b + 1.0) +
                    std::lgamma(kk + mx + 1.0) - std::lgamma(kk + 1.0) -
                    2.0 * mx * std::log(kk + 0.5 * (a + b + 1.0)) -
                    std::lgamma(kk + mn + 1.0);
  return std::exp(lg);
}

namespace {

// Acceptance ratio of the arcsine-envelope layer for component k: the
// tables hold phi values up to each k^i.
double component_ratio(const MultiIndex& k, const JacobiParams& params,
                       const Point& x,
                       std::vector<std::vector<double>>& tables,
                       const BasisSpec* spec) {
  const int d = params.dim();
  double ratio = 1.0;
  for (int i = 0; i < d; ++i) {
    const int depth = static_cast<int>(k[i]) + 1;
    if (spec != nullptr) {
      spec->univariate(i).eval_into(x[i], tables[i].data());
    } else {
      eval_univariate(params.a[i], params.b[i], depth, x[i]).swap(tables[i]);
    }
    const double phi = tables[i][k[i]];
    ratio *= M_PI * std::pow(1.0 - x[i], params.a[i] + 0.5) *
             std::pow(1.0 + x[i], params.b[i] + 0.5) * phi * phi;
  }
  return ratio;
}

ProposalDraw rejection_sample_component(const MultiIndex& k,
                                        const JacobiParams& params,
                                        double bound, RngStream& rng,
                                        std::vector<std::vector<double>>& tables,
                                        const BasisSpec* spec) {
  ProposalDraw draw;
  for (;;) {
    Point x = sample_arcsine(rng, params.dim());
    const double ratio = component_ratio(k, params, x, tables, spec);
    if (ratio > bound * (1.0 + kBoundSlack))
      throw BoundViolationError("component acceptance ratio exceeded bound");
    if (rng.uniform() * bound <= ratio) {
      draw.x = std::move(x);
      return draw;
    }
    ++draw.rejections;
  }
}

}  // namespace

ProposalDraw sample_component(const MultiIndex& k, const JacobiParams& params,
                              RngStream& rng) {
  if (!params.sampler_admissible())
    throw std::invalid_argument("sample_component: parameters not admissible");
  double bound = 1.0;
  for (int i = 0; i < params.dim(); ++i)
    bound *= component_bound(k[i], params.a[i], params.b[i]);
  std::vector<std::vector<double>> tables(params.dim());
  for (int i = 0; i < params.dim(); ++i)
    tables[i].resize(static_cast<std::size_t>(k[i]) + 1);
  return rejection_sample_component(k, params, bound, rng, tables, nullptr);
}

ProposalDraw sample_marginal(const BasisSpec& spec, RngStream& rng) {
  const auto index =
      static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(spec.size())));
  return sample_component(spec.ordering()[index], spec.params(), rng);
}

double conditional_acceptance(const GramSchmidtState& state,
                              const BasisSpec& spec,
                              std::span<const double> x) {
  FeatureEvaluator eval(spec);
  return state.acceptance_ratio(eval(x));
}

void update_state(GramSchmidtState& state, const BasisSpec& spec,
                  std::span<const double> x) {
  FeatureEvaluator eval(spec);
  const Eigen::VectorXd& phi = eval(x);
  state.add_point(Point(x.begin(), x.end()), phi);
}

ChainRuleSampler::ChainRuleSampler(const BasisSpec& spec)
    : spec_(&spec), eval_(spec) {
  if (!spec.params().sampler_admissible())
    throw std::invalid_argument(
        "ChainRuleSampler: parameters must satisfy |a|, |b| <= 1/2");
  const auto& params = spec.params();
  bounds_.reserve(spec.size());
  for (const auto& k : spec.ordering()) {
    double bound = 1.0;
    for (int i = 0; i < params.dim(); ++i)
      bound *= component_bound(k[i], params.a[i], params.b[i]);
    bounds_.push_back(bound);
  }
  tables_.resize(params.dim());
  for (int i = 0; i < params.dim(); ++i) tables_[i].resize(spec.depth()[i]);
}

ProposalDraw ChainRuleSampler::draw_component(int ordering_index,
                                              RngStream& rng) {
  return rejection_sample_component(spec_->ordering()[ordering_index],
                                    spec_->params(), bounds_[ordering_index],
                                    rng, tables_, spec_);
}

ProposalDraw ChainRuleSampler::draw_marginal(RngStream& rng) {
  const auto index = static_cast<int>(
      rng.uniform_index(static_cast<std::uint64_t>(spec_->size())));
  return draw_component(index, rng);
}

DppSample ChainRuleSampler::sample(RngStream& rng) {
  const int n = spec_->size();
  DppSample out;
  out.seed = rng.seed();
  out.stream = rng.stream();
  out.method = DppSample::Method::kChainRule;

  GramSchmidtState state(n, n);
  while (state.count() < n) {
    ProposalDraw draw = draw_marginal(rng);
    out.rejections_marginal += draw.rejections;
    const Eigen::VectorXd& phi = eval_(draw.x);
    const double ratio = state.acceptance_ratio(phi);
    if (rng.uniform() < ratio) {
      try {
        state.add_point(std::move(draw.x), phi);
        continue;
      } catch (const DegeneratePointError&) {
        // resample; counted as a rejection below
      }
    }
    ++out.rejections_conditional;
  }
  out.points = state.points();
  return out;
}

DppSample sample_projection_dpp(const BasisSpec& spec, RngStream& rng) {
  ChainRuleSampler sampler(spec);
  return sampler.sample(rng);
}

DppSample sample_univariate_tridiagonal(int n, double a, double b,
                                        RngStream& rng) {
  if (n < 1)
    throw std::invalid_argument("sample_univariate_tridiagonal: N >= 1");
  if (!(a > -1.0 && b > -1.0))
    throw std::invalid_argument("sample_univariate_tridiagonal: a, b > -1");

  // Killip-Nenciu tridiagonal model at beta = 2: a chain of 2N-1
  // independent Beta-distributed coefficients on (-1, 1) turned into
  // Jacobi-matrix entries through the Geronimus relations. The ensemble
  // lives on [-2, 2] with weight (2-x)^a (2+x)^b; eigenvalues are halved
  // at the end.
  const int m = 2 * n - 1;
  std::vector<double> alpha(m);
  for (int k = 0; k < m; ++k) {
    double s, t;
    if (k % 2 == 0) {
      const double base = 0.5 * (2.0 * n - k - 2.0);
      s = base + a + 1.0;
      t = base + b + 1.0;
    } else {
      s = 0.5 * (2.0 * n - k - 3.0) + a + b + 2.0;
      t = 0.5 * (2.0 * n - k - 1.0);
    }
    alpha[k] = 1.0 - 2.0 * rng.beta(s, t);
  }
  const auto coeff = [&](int k) { return k == -1 ? -1.0 : alpha[k]; };

  std::vector<double> diag(n);
  std::vector<double> off(n - 1);
  for (int i = 0; i < n; ++i) {
    diag[i] = (1.0 - coeff(2 * i - 1)) * coeff(2 * i);
    if (i > 0) diag[i] -= (1.0 + coeff(2 * i - 1)) * coeff(2 * i - 2);
  }
  for (int i = 0; i + 1 < n; ++i) {
    const double sq = (1.0 - coeff(2 * i - 1)) *
                      (1.0 - coeff(2 * i) * coeff(2 * i)) *
                      (1.0 + coeff(2 * i + 1));
    off[i] = std::sqrt(std::max(sq, 0.0));
  }

  DppSample out;
  out.seed = rng.seed();
  out.stream = rng.stream();
  out.method = DppSample::Method::kTridiagonal;
  const std::vector<double> eigs =
      tridiagonal_eigenvalues(std::move(diag), std::move(off));
  out.points.reserve(n);
  for (double e : eigs) {
    double x = 0.5 * e;
    // the ensemble is supported strictly inside; guard against roundoff
    x = std::clamp(x, std::nextafter(-1.0, 0.0), std::nextafter(1.0, 0.0));
    out.points.push_back({x});
  }
  return out;
}

}  // namespace dppquad
