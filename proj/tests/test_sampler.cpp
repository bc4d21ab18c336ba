#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dppquad/quadrature.hpp"
#include "dppquad/sampler.hpp"
#include "dppquad/stats.hpp"

using namespace dppquad;

namespace {

// chi-square of binned draws in (-1,1) against a density known pointwise;
// bins with small expectation are pooled.
double chi2_pvalue_against_density(const std::vector<double>& draws,
                                   const std::function<double(double)>& density,
                                   int bins) {
  std::vector<double> expected(bins, 0.0);
  const QuadratureRule gl = gauss_jacobi_rule(16, 0.0, 0.0);
  const double width = 2.0 / bins;
  for (int i = 0; i < bins; ++i) {
    const double mid = -1.0 + (i + 0.5) * width;
    // GL weights sum to 2 on [-1,1]; half-width scaling maps onto the bin
    for (std::size_t q = 0; q < gl.nodes.size(); ++q)
      expected[i] += gl.weights[q] *
                     density(mid + 0.5 * width * gl.nodes[q]) * 0.5 * width;
    expected[i] *= static_cast<double>(draws.size());
  }
  std::vector<double> observed(bins, 0.0);
  for (double x : draws) {
    int i = static_cast<int>((x + 1.0) / 2.0 * bins);
    observed[std::clamp(i, 0, bins - 1)] += 1.0;
  }
  std::vector<double> obs, expd;
  double co = 0.0, ce = 0.0;
  for (int i = 0; i < bins; ++i) {
    co += observed[i];
    ce += expected[i];
    if (ce >= 5.0) {
      obs.push_back(co);
      expd.push_back(ce);
      co = ce = 0.0;
    }
  }
  if (!obs.empty() && ce > 0.0) {
    obs.back() += co;
    expd.back() += ce;
  }
  double stat = 0.0;
  for (std::size_t i = 0; i < obs.size(); ++i)
    stat += (obs[i] - expd[i]) * (obs[i] - expd[i]) / expd[i];
  return chi2_sf(stat, static_cast<int>(obs.size()) - 1);
}

}  // namespace

TEST_CASE("arcsine draws match the closed-form CDF") {
  RngStream rng(101, 0);
  std::vector<double> xs;
  xs.reserve(100000);
  for (int i = 0; i < 100000; ++i) xs.push_back(sample_arcsine(rng, 1)[0]);
  const auto ks =
      ks_test_cdf(xs, [](double x) { return 1.0 - std::acos(x) / M_PI; });
  CHECK(ks.statistic < 0.01);
  CHECK(*std::min_element(xs.begin(), xs.end()) > -1.0);
  CHECK(*std::max_element(xs.begin(), xs.end()) < 1.0);
}

TEST_CASE("component bound values") {
  CHECK(component_bound(0, -0.5, -0.5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(component_bound(0, 0.0, 0.0) ==
        doctest::Approx(M_PI / 2.0).epsilon(1e-12));
  // reported near-maximal value of the k >= 1 bound
  CHECK(component_bound(1, -0.0691, 0.5) ==
        doctest::Approx(2.02).epsilon(0.005));
  CHECK(component_bound(1, -0.0691, 0.5) < 2.03);
  CHECK_THROWS_AS(component_bound(1, 0.7, 0.0), std::invalid_argument);
}

TEST_CASE("component bound dominates the acceptance ratio on a grid") {
  for (double a : {-0.5, -0.15, 0.5}) {
    for (double b : {-0.5, 0.32}) {
      UnivariateJacobi eval(a, b, 7);
      std::vector<double> vals(7);
      for (std::uint32_t k : {0u, 1u, 3u, 6u}) {
        const double c = component_bound(k, a, b);
        for (int i = 1; i < 2000; ++i) {
          const double x = std::cos(M_PI * i / 2000.0);
          eval.eval_into(x, vals.data());
          const double ratio = M_PI * std::pow(1.0 - x, a + 0.5) *
                               std::pow(1.0 + x, b + 0.5) * vals[k] * vals[k];
          if (!(ratio <= c * (1.0 + 1e-9))) {
            CHECK(ratio <= c * (1.0 + 1e-9));
            break;
          }
        }
      }
    }
  }
}

TEST_CASE("k=0 arcsine component accepts every proposal") {
  const JacobiParams params = JacobiParams::constant(1, -0.5, -0.5);
  RngStream rng(7, 0);
  std::uint64_t rejections = 0;
  for (int i = 0; i < 2000; ++i)
    rejections += sample_component({0}, params, rng).rejections;
  CHECK(rejections == 0);
}

TEST_CASE("k=0 flat-weight component is symmetric") {
  const JacobiParams params = JacobiParams::constant(1, 0.0, 0.0);
  RngStream rng(13, 0);
  const int n = 100000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_component({0}, params, rng).x[0];
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean) <= 3.0 * se);
}

TEST_CASE("k=2 component histogram matches phi_2^2 omega") {
  const JacobiParams params = JacobiParams::constant(1, 0.0, 0.0);
  RngStream rng(29, 0);
  std::vector<double> draws;
  draws.reserve(40000);
  for (int i = 0; i < 40000; ++i)
    draws.push_back(sample_component({2}, params, rng).x[0]);
  const double p = chi2_pvalue_against_density(
      draws,
      [](double x) {
        const auto v = eval_univariate(0.0, 0.0, 3, x);
        return v[2] * v[2];
      },
      40);
  CHECK(p > 0.01);
}

TEST_CASE("marginal density is K_N(x,x) omega(x) / N") {
  const JacobiParams params = JacobiParams::constant(1, 0.0, 0.0);
  const int n = 5;
  const BasisSpec spec(params, n);
  RngStream rng(31, 0);
  std::vector<double> draws;
  std::uint64_t rejections = 0;
  const int count = 50000;
  draws.reserve(count);
  for (int i = 0; i < count; ++i) {
    auto draw = sample_marginal(spec, rng);
    draws.push_back(draw.x[0]);
    rejections += draw.rejections;
  }
  const double p = chi2_pvalue_against_density(
      draws,
      [&](double x) {
        const double pt[] = {x};
        return kernel(spec, pt, pt) / n;
      },
      50);
  CHECK(p > 0.01);

  // expected trials per accepted draw = (1/N) sum_k prod_i C_{k^i}
  double expect_trials = 0.0;
  for (const auto& k : spec.ordering())
    expect_trials += component_bound(k[0], 0.0, 0.0) / n;
  const double mean_rej = static_cast<double>(rejections) / count;
  CHECK(mean_rej == doctest::Approx(expect_trials - 1.0).epsilon(0.1));
}

TEST_CASE("conditional acceptance: empty, duplicate, exhausted") {
  const JacobiParams params = JacobiParams::constant(2, 0.0, 0.0);
  const int n = 6;
  const BasisSpec spec(params, n);
  GramSchmidtState state(n, n);

  const Point x0 = {0.3, -0.4};
  CHECK(conditional_acceptance(state, spec, x0) == doctest::Approx(1.0));

  update_state(state, spec, x0);
  CHECK(conditional_acceptance(state, spec, x0) <= 1e-10);

  RngStream rng(17, 0);
  const DppSample sample = sample_projection_dpp(spec, rng);
  GramSchmidtState full(n, n);
  for (const auto& p : sample.points) update_state(full, spec, p);
  const Point fresh = {0.123, 0.777};
  CHECK(conditional_acceptance(full, spec, fresh) <= 1e-8);
}

TEST_CASE("update_state invariants") {
  const JacobiParams params = JacobiParams::constant(2, -0.5, 0.5);
  const int n = 16;
  const BasisSpec spec(params, n);
  GramSchmidtState state(n, n);
  const Point first = {0.25, -0.6};
  update_state(state, spec, first);
  FeatureEvaluator eval(spec);
  const Eigen::VectorXd phi = eval(first);
  CHECK((state.directions().col(0) - phi / phi.norm()).norm() < 1e-12);

  RngStream rng(23, 0);
  const DppSample sample = sample_projection_dpp(spec, rng);
  GramSchmidtState full(n, n);
  for (const auto& p : sample.points) update_state(full, spec, p);
  const Eigen::MatrixXd gram =
      full.directions().transpose() * full.directions();
  CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8);

  // re-adding an already-orthogonalized point is degenerate
  GramSchmidtState partial(n, n);
  for (int i = 0; i + 1 < n; ++i) update_state(partial, spec, sample.points[i]);
  CHECK_THROWS_AS(update_state(partial, spec, sample.points[0]),
                  DegeneratePointError);
}

TEST_CASE("gram-schmidt stays orthonormal on a N=1000 run") {
  const JacobiParams params = JacobiParams::constant(2, -0.5, -0.5);
  const int n = 1000;
  const BasisSpec spec(params, n);
  RngStream rng(41, 0);
  const DppSample sample = sample_projection_dpp(spec, rng);
  GramSchmidtState state(n, n);
  FeatureEvaluator eval(spec);
  for (const auto& p : sample.points) state.add_point(p, eval(p));
  Eigen::MatrixXd gram = state.directions().transpose() * state.directions();
  gram.diagonal().array() -= 1.0;
  CHECK(gram.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("marginal with N=1 reduces to the k=0 component") {
  const JacobiParams params = JacobiParams::constant(1, 0.25, -0.25);
  const BasisSpec spec(params, 1);
  RngStream rng_m(81, 4);
  RngStream rng_c(81, 4);
  rng_c.next_u64();  // the mixture-index draw
  for (int i = 0; i < 50; ++i) {
    const auto m = sample_marginal(spec, rng_m);
    const auto c = sample_component({0}, params, rng_c);
    CHECK(m.x[0] == c.x[0]);
    rng_c.next_u64();
  }
}

TEST_CASE("chain rule has fixed cardinality, interior points, determinism") {
  const JacobiParams params({0.5, -0.25}, {-0.5, 0.1});
  const BasisSpec spec(params, 12);
  RngStream rng1(77, 3), rng2(77, 3);
  const DppSample s1 = sample_projection_dpp(spec, rng1);
  const DppSample s2 = sample_projection_dpp(spec, rng2);
  REQUIRE(s1.points.size() == 12);
  REQUIRE(s2.points.size() == 12);
  for (std::size_t i = 0; i < s1.points.size(); ++i) {
    CHECK(s1.points[i] == s2.points[i]);
    for (double c : s1.points[i]) {
      CHECK(c > -1.0);
      CHECK(c < 1.0);
    }
  }
  CHECK(s1.rejections_marginal == s2.rejections_marginal);
  CHECK(s1.rejections_conditional == s2.rejections_conditional);
}

TEST_CASE("first chain-rule point follows the marginal (exchangeability)") {
  const JacobiParams params = JacobiParams::constant(1, 0.0, 0.0);
  const int n = 8;
  const BasisSpec spec(params, n);
  std::vector<double> firsts;
  firsts.reserve(6000);
  for (int r = 0; r < 6000; ++r) {
    RngStream rng(53, static_cast<std::uint64_t>(r));
    firsts.push_back(sample_projection_dpp(spec, rng).points[0][0]);
  }
  const double p = chi2_pvalue_against_density(
      firsts,
      [&](double x) {
        const double pt[] = {x};
        return kernel(spec, pt, pt) / n;
      },
      40);
  CHECK(p > 0.01);
}

TEST_CASE("one-point correlation matches K(x,x) omega(x)") {
  const JacobiParams params = JacobiParams::constant(1, 0.0, 0.0);
  const int n = 10;
  const int runs = 2000;
  const BasisSpec spec(params, n);
  const int bins = 20;
  std::vector<double> counts(bins, 0.0);
  ChainRuleSampler sampler(spec);
  for (int r = 0; r < runs; ++r) {
    RngStream rng(59, static_cast<std::uint64_t>(r));
    const DppSample sample = sampler.sample(rng);
    for (const auto& pnt : sample.points) {
      int i = static_cast<int>((pnt[0] + 1.0) / 2.0 * bins);
      counts[std::clamp(i, 0, bins - 1)] += 1.0;
    }
  }
  const QuadratureRule gl = gauss_jacobi_rule(24, 0.0, 0.0);
  for (int i = 0; i < bins; ++i) {
    const double lo = -1.0 + 2.0 * i / bins, hi = lo + 2.0 / bins;
    double expect = 0.0;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gl.nodes[q];
      const double pt[] = {x};
      expect += gl.weights[q] * kernel(spec, pt, pt) * 0.5 * (hi - lo);
    }
    expect *= runs;
    CHECK(std::abs(counts[i] - expect) <= 3.0 * std::sqrt(expect));
  }
}

TEST_CASE("tridiagonal sampler: N=1 is the normalized base measure") {
  std::vector<double> xs;
  xs.reserve(30000);
  for (int r = 0; r < 30000; ++r) {
    RngStream rng(61, static_cast<std::uint64_t>(r));
    xs.push_back(sample_univariate_tridiagonal(1, 0.0, 0.0, rng).points[0][0]);
  }
  const auto ks = ks_test_cdf(xs, [](double x) { return 0.5 * (x + 1.0); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("tridiagonal sampler: exact pair moments at N=2, flat weight") {
  // under the joint density prop. to (x-y)^2 on [-1,1]^2:
  // E[xy] = -1/3, E[x^2+y^2] = 14/15
  const int runs = 200000;
  double sxy = 0.0, sxx = 0.0;
  for (int r = 0; r < runs; ++r) {
    RngStream rng(67, static_cast<std::uint64_t>(r));
    const DppSample s = sample_univariate_tridiagonal(2, 0.0, 0.0, rng);
    sxy += s.points[0][0] * s.points[1][0];
    sxx += s.points[0][0] * s.points[0][0] + s.points[1][0] * s.points[1][0];
  }
  CHECK(sxy / runs == doctest::Approx(-1.0 / 3.0).epsilon(0.015));
  CHECK(sxx / runs == doctest::Approx(14.0 / 15.0).epsilon(0.015));
}

TEST_CASE("tridiagonal sampler: sorted interior points, determinism") {
  RngStream rng1(71, 5), rng2(71, 5);
  const DppSample s1 = sample_univariate_tridiagonal(40, 0.3, -0.6, rng1);
  const DppSample s2 = sample_univariate_tridiagonal(40, 0.3, -0.6, rng2);
  REQUIRE(s1.points.size() == 40);
  for (std::size_t i = 0; i < s1.points.size(); ++i) {
    CHECK(s1.points[i][0] == s2.points[i][0]);
    CHECK(s1.points[i][0] > -1.0);
    CHECK(s1.points[i][0] < 1.0);
    if (i > 0) CHECK(s1.points[i][0] >= s1.points[i - 1][0]);
  }
  CHECK(s1.total_rejections() == 0);
}

TEST_CASE("two exact samplers agree in distribution (light version)") {
  const int n = 10, runs = 60;
  std::vector<double> tri, chain;
  const BasisSpec spec(JacobiParams::constant(1, -0.5, -0.5), n);
  for (int r = 0; r < runs; ++r) {
    RngStream rng_t(73, static_cast<std::uint64_t>(2 * r));
    RngStream rng_c(73, static_cast<std::uint64_t>(2 * r + 1));
    for (const auto& p :
         sample_univariate_tridiagonal(n, -0.5, -0.5, rng_t).points)
      tri.push_back(p[0]);
    for (const auto& p : sample_projection_dpp(spec, rng_c).points)
      chain.push_back(p[0]);
  }
  CHECK(ks_two_sample(tri, chain).p_value > 0.001);
}
