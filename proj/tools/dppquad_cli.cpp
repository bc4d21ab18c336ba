// Command-line front end: `sample` emits DPP points, `estimate` computes a
// single-shot integral estimate, `experiment` runs a full variance sweep,
// `bench` measures sampler scaling.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "dppquad/estimators.hpp"
#include "dppquad/experiment.hpp"
#include "dppquad/integrands.hpp"
#include "dppquad/sampler.hpp"

namespace {

using namespace dppquad;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

JacobiParams make_params(int d, const std::vector<double>& a,
                         const std::vector<double>& b) {
  std::vector<double> av = a.empty() ? std::vector<double>(d, 0.0) : a;
  std::vector<double> bv = b.empty() ? std::vector<double>(d, 0.0) : b;
  if (av.size() == 1) av.assign(d, av[0]);
  if (bv.size() == 1) bv.assign(d, bv[0]);
  return JacobiParams(std::move(av), std::move(bv));
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) throw CLI::ValidationError("output", "cannot open " + path);
  return file;
}

int run_sample(int d, int n, const std::vector<double>& a,
               const std::vector<double>& b, std::uint64_t seed,
               const std::string& method, const std::string& output) {
  const JacobiParams params = make_params(d, a, b);
  RngStream rng(seed, 1);
  DppSample sample;
  if (method == "tridiagonal" || (method == "auto" && d == 1)) {
    if (d != 1) {
      std::cerr << "tridiagonal sampler requires d = 1\n";
      return kExitUsage;
    }
    sample = sample_univariate_tridiagonal(n, params.a[0], params.b[0], rng);
  } else {
    const BasisSpec spec(params, n);
    sample = sample_projection_dpp(spec, rng);
  }
  std::ofstream file;
  std::ostream& os = open_output(file, output);
  for (int i = 0; i < d; ++i) os << (i ? "," : "") << "x" << (i + 1);
  os << "\n";
  for (const auto& point : sample.points) {
    for (int i = 0; i < d; ++i) os << (i ? "," : "") << fmt(point[i]);
    os << "\n";
  }
  std::cerr << "rejections: marginal=" << sample.rejections_marginal
            << " conditional=" << sample.rejections_conditional << "\n";
  return 0;
}

int run_estimate(const std::string& integrand_label, double bump_eps,
                 int eigsum_m, int d, int n, const std::vector<double>& a,
                 const std::vector<double>& b, std::uint64_t seed,
                 const std::string& estimator) {
  const JacobiParams params = make_params(d, a, b);
  const BasisSpec spec(params, n);

  Integrand f;
  if (integrand_label == "eigsum") {
    const int m = eigsum_m > 0 ? eigsum_m : n + 1;
    f = eig_sum(std::make_shared<BasisSpec>(params, m), m);
  } else {
    f = integrand_by_label(integrand_label, bump_eps, nullptr);
  }

  RngStream rng(seed, 1);
  if (estimator == "mc") {
    std::cout << fmt(vanilla_mc_estimate(params, n, f, rng)) << "\n";
    return 0;
  }
  DppSample sample = d == 1 ? sample_univariate_tridiagonal(
                                  n, params.a[0], params.b[0], rng)
                            : sample_projection_dpp(spec, rng);
  try {
    const double value = estimator == "bh" ? bh_estimate(spec, sample, f)
                                           : ez_estimate(spec, sample, f);
    std::cout << fmt(value) << "\n";
  } catch (const ConditioningError& err) {
    std::cerr << "conditioning failure, rcond=" << fmt(err.condition_estimate)
              << "\n";
    return kExitNumerical;
  }
  return 0;
}

int run_experiment_cmd(const ExperimentConfig& config) {
  const EstimateReport report = run_experiment(config);
  print_report(std::cout, config, report);
  if (report.max_failure_count * 5 > config.replicates) {
    std::cerr << "failure budget exceeded: " << report.max_failure_count
              << " failed replicates at one N (> 20%)\n";
    return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo integration with multivariate Jacobi ensembles"};
  app.require_subcommand(1);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw one DPP sample");
  int s_d = 1, s_n = 10;
  std::vector<double> s_a, s_b;
  std::uint64_t s_seed = 0;
  std::string s_method = "auto", s_output;
  sample_cmd->add_option("-d,--dim", s_d, "dimension");
  sample_cmd->add_option("-N,--points", s_n, "number of points");
  sample_cmd->add_option("-a", s_a, "Jacobi exponents a (one value or d)");
  sample_cmd->add_option("-b", s_b, "Jacobi exponents b");
  sample_cmd->add_option("--seed", s_seed, "RNG seed")->required();
  sample_cmd->add_option("--method", s_method, "auto|chain|tridiagonal")
      ->check(CLI::IsMember({"auto", "chain", "tridiagonal"}));
  sample_cmd->add_option("-o,--output", s_output, "output CSV (default stdout)");

  // estimate
  auto* est_cmd = app.add_subcommand("estimate", "single-shot estimate");
  std::string e_integrand = "bump", e_estimator = "ez";
  double e_eps = 0.05;
  int e_m = 0, e_d = 1, e_n = 10;
  std::vector<double> e_a, e_b;
  std::uint64_t e_seed = 0;
  est_cmd->add_option("--integrand", e_integrand,
                      "bump|eigsum|abs|heaviside|cosine|mix");
  est_cmd->add_option("--eps", e_eps, "bump cut parameter");
  est_cmd->add_option("--eigsum-m", e_m, "eigsum term count (0: N+1)");
  est_cmd->add_option("-d,--dim", e_d, "dimension");
  est_cmd->add_option("-N,--points", e_n, "number of points");
  est_cmd->add_option("-a", e_a, "Jacobi exponents a");
  est_cmd->add_option("-b", e_b, "Jacobi exponents b");
  est_cmd->add_option("--seed", e_seed, "RNG seed")->required();
  est_cmd->add_option("--estimator", e_estimator, "bh|ez|mc")
      ->check(CLI::IsMember({"bh", "ez", "mc"}));

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "full variance sweep");
  std::string x_config_path;
  ExperimentConfig config;
  std::string x_integrand, x_policy, x_sampler, x_estimators, x_ngrid,
      x_output;
  double x_eps = -1.0;
  int x_m = -1, x_d = 0, x_r = 0, x_threads = -1, x_quad_m = 0;
  std::vector<double> x_a, x_b;
  std::uint64_t x_seed = 0;
  bool x_seed_given = false;
  exp_cmd->add_option("--config", x_config_path, "key=value config file");
  exp_cmd->add_option("--integrand", x_integrand);
  exp_cmd->add_option("--eps", x_eps, "bump cut parameter");
  exp_cmd->add_option("--eigsum-m", x_m, "eigsum term count (0: N+1)");
  exp_cmd->add_option("-d,--dim", x_d);
  exp_cmd->add_option("--n-grid", x_ngrid, "comma-separated N values");
  exp_cmd->add_option("-R,--replicates", x_r);
  exp_cmd->add_option("--estimators", x_estimators, "subset of bh,ez,mc");
  exp_cmd->add_option("--seed", x_seed)->each([&](const std::string&) {
    x_seed_given = true;
  });
  exp_cmd->add_option("--policy", x_policy, "fixed|paper-random");
  exp_cmd->add_option("-a", x_a, "fixed-policy exponents a");
  exp_cmd->add_option("-b", x_b, "fixed-policy exponents b");
  exp_cmd->add_option("--sampler", x_sampler, "auto|chain|tridiagonal");
  exp_cmd->add_option("--quadrature-m", x_quad_m, "truth quadrature nodes");
  exp_cmd->add_option("-o,--output", x_output, "CSV output path");
  exp_cmd->add_option("--threads", x_threads, "worker threads (0: auto)");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "sampler scaling sweep");
  std::string bench_d = "1,2,3", bench_n = "20,50,100", bench_output;
  int bench_r = 10;
  std::uint64_t bench_seed = 0;
  bench_cmd->add_option("--d-grid", bench_d, "comma-separated dimensions");
  bench_cmd->add_option("--n-grid", bench_n, "comma-separated N values");
  bench_cmd->add_option("-R,--replicates", bench_r);
  bench_cmd->add_option("--seed", bench_seed);
  bench_cmd->add_option("-o,--output", bench_output, "CSV output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (sample_cmd->parsed())
      return run_sample(s_d, s_n, s_a, s_b, s_seed, s_method, s_output);
    if (est_cmd->parsed())
      return run_estimate(e_integrand, e_eps, e_m, e_d, e_n, e_a, e_b, e_seed,
                          e_estimator);
    if (exp_cmd->parsed()) {
      if (!x_config_path.empty())
        apply_config_entries(config, parse_config_file(x_config_path));
      std::map<std::string, std::string> overrides;
      if (!x_integrand.empty()) overrides["integrand"] = x_integrand;
      if (x_eps >= 0.0) overrides["bump_eps"] = std::to_string(x_eps);
      if (x_m >= 0) overrides["eigsum_m"] = std::to_string(x_m);
      if (x_d > 0) overrides["d"] = std::to_string(x_d);
      if (!x_ngrid.empty()) overrides["n_grid"] = x_ngrid;
      if (x_r > 0) overrides["replicates"] = std::to_string(x_r);
      if (!x_estimators.empty()) overrides["estimators"] = x_estimators;
      if (!x_policy.empty()) overrides["policy"] = x_policy;
      if (!x_sampler.empty()) overrides["sampler"] = x_sampler;
      if (x_quad_m > 0) overrides["quadrature_m"] = std::to_string(x_quad_m);
      if (!x_output.empty()) overrides["output"] = x_output;
      if (x_threads >= 0) overrides["threads"] = std::to_string(x_threads);
      apply_config_entries(config, overrides);
      if (!x_a.empty()) config.a = x_a;
      if (!x_b.empty()) config.b = x_b;
      if (x_seed_given) config.seed = x_seed;
      const bool seed_in_file =
          !x_config_path.empty() &&
          parse_config_file(x_config_path).count("seed") > 0;
      if (!x_seed_given && !seed_in_file) {
        std::cerr << "experiment requires --seed (or seed= in the config)\n";
        return kExitUsage;
      }
      return run_experiment_cmd(config);
    }
    if (bench_cmd->parsed()) {
      std::vector<int> ds, ns;
      for (const auto& item : CLI::detail::split(bench_d, ','))
        ds.push_back(std::stoi(item));
      for (const auto& item : CLI::detail::split(bench_n, ','))
        ns.push_back(std::stoi(item));
      const auto rows = bench_sampler(ds, ns, bench_r, bench_seed);
      std::ofstream file;
      std::ostream& os = open_output(file, bench_output);
      write_bench_csv(os, rows);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
