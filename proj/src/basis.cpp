#include "dppquad/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dppquad {

JacobiParams::JacobiParams(std::vector<double> a_in, std::vector<double> b_in)
    : a(std::move(a_in)), b(std::move(b_in)) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("JacobiParams: a and b must match, d >= 1");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > -1.0 && b[i] > -1.0))
      throw std::invalid_argument("JacobiParams: exponents must be > -1");
  }
}

JacobiParams JacobiParams::constant(int d, double a, double b) {
  return JacobiParams(std::vector<double>(d, a), std::vector<double>(d, b));
}

bool JacobiParams::sampler_admissible() const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > 0.5 || std::abs(b[i]) > 0.5) return false;
  }
  return true;
}

double base_weight(const JacobiParams& params, std::span<const double> x) {
  if (static_cast<int>(x.size()) != params.dim())
    throw std::invalid_argument("base_weight: dimension mismatch");
  double w = 1.0;
  for (int i = 0; i < params.dim(); ++i) {
    const double om = 1.0 - x[i];
    const double op = 1.0 + x[i];
    if ((om <= 0.0 && params.a[i] < 0.0) || (op <= 0.0 && params.b[i] < 0.0))
      throw std::domain_error(
          "base_weight: boundary point with negative exponent");
    w *= std::pow(om, params.a[i]) * std::pow(op, params.b[i]);
  }
  return w;
}

double total_mass(const JacobiParams& params) {
  double mass = 1.0;
  for (int i = 0; i < params.dim(); ++i)
    mass *= jacobi_mass(params.a[i], params.b[i]);
  return mass;
}

BasisSpec::BasisSpec(JacobiParams params, int n)
    : params_(std::move(params)), n_(n) {
  if (n < 1) throw std::invalid_argument("BasisSpec: N >= 1 required");
  const int d = params_.dim();
  ordering_ = ordering_table(static_cast<std::uint64_t>(n), d);
  depth_.assign(d, 1);
  for (const auto& k : ordering_) {
    for (int i = 0; i < d; ++i)
      depth_[i] = std::max(depth_[i], static_cast<int>(k[i]) + 1);
  }
  univariate_.reserve(d);
  for (int i = 0; i < d; ++i)
    univariate_.emplace_back(params_.a[i], params_.b[i], depth_[i]);
}

FeatureEvaluator::FeatureEvaluator(const BasisSpec& spec) : spec_(&spec) {
  tables_.resize(spec.dim());
  for (int i = 0; i < spec.dim(); ++i)
    tables_[i].resize(spec.depth()[i]);
  phi_.resize(spec.size());
}

const Eigen::VectorXd& FeatureEvaluator::operator()(std::span<const double> x) {
  const BasisSpec& spec = *spec_;
  const int d = spec.dim();
  if (static_cast<int>(x.size()) != d)
    throw std::invalid_argument("FeatureEvaluator: dimension mismatch");
  for (int i = 0; i < d; ++i) {
    if (!(x[i] >= -1.0 && x[i] <= 1.0))
      throw std::domain_error("FeatureEvaluator: coordinate outside [-1,1]");
    spec.univariate(i).eval_into(x[i], tables_[i].data());
  }
  const auto& ordering = spec.ordering();
  for (int n = 0; n < spec.size(); ++n) {
    double v = tables_[0][ordering[n][0]];
    for (int i = 1; i < d; ++i) v *= tables_[i][ordering[n][i]];
    phi_[n] = v;
  }
  return phi_;
}

std::vector<double> feature_vector(const BasisSpec& spec,
                                   std::span<const double> x) {
  FeatureEvaluator eval(spec);
  const Eigen::VectorXd& phi = eval(x);
  return std::vector<double>(phi.data(), phi.data() + phi.size());
}

double kernel(const BasisSpec& spec, std::span<const double> x,
              std::span<const double> y) {
  FeatureEvaluator eval(spec);
  Eigen::VectorXd phix = eval(x);
  const Eigen::VectorXd& phiy = eval(y);
  return phix.dot(phiy);
}

}  // namespace dppquad
