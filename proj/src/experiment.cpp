#include "dppquad/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include "dppquad/estimators.hpp"
#include "dppquad/integrands.hpp"
#include "dppquad/quadrature.hpp"
#include "dppquad/rng.hpp"
#include "dppquad/sampler.hpp"

namespace dppquad {

namespace {

constexpr std::uint64_t kParamStream = 0;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::int64_t elapsed_ns_since(
    const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

JacobiParams resolve_params(const ExperimentConfig& config) {
  const int d = config.d;
  if (config.policy == ParamPolicy::kPaperRandom) {
    // First dimension pinned to the arcsine exponents, the rest drawn once
    // per experiment and logged in the report.
    RngStream rng(config.seed, kParamStream);
    std::vector<double> a(d), b(d);
    a[0] = b[0] = -0.5;
    for (int i = 1; i < d; ++i) {
      a[i] = rng.uniform() - 0.5;
      b[i] = rng.uniform() - 0.5;
    }
    return JacobiParams(std::move(a), std::move(b));
  }
  std::vector<double> a = config.a;
  std::vector<double> b = config.b;
  if (a.empty()) a.assign(d, 0.0);
  if (b.empty()) b.assign(d, 0.0);
  if (a.size() == 1) a.assign(d, a[0]);
  if (b.size() == 1) b.assign(d, b[0]);
  if (static_cast<int>(a.size()) != d || static_cast<int>(b.size()) != d)
    throw std::invalid_argument("fixed parameters do not match dimension");
  return JacobiParams(std::move(a), std::move(b));
}

bool wants(const ExperimentConfig& config, const std::string& name) {
  return std::find(config.estimators.begin(), config.estimators.end(), name) !=
         config.estimators.end();
}

struct ReplicateResult {
  std::vector<RowRecord> rows;
};

}  // namespace

void ExperimentConfig::validate() const {
  if (d < 1) throw std::invalid_argument("config: d >= 1 required");
  if (n_grid.empty()) throw std::invalid_argument("config: N grid required");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1])
      throw std::invalid_argument("config: N grid must be strictly increasing");
  }
  if (n_grid.front() < 1) throw std::invalid_argument("config: N >= 1");
  if (replicates < 2) throw std::invalid_argument("config: R >= 2 required");
  if (estimators.empty())
    throw std::invalid_argument("config: at least one estimator");
  for (const auto& e : estimators) {
    if (e != "bh" && e != "ez" && e != "mc")
      throw std::invalid_argument("config: unknown estimator " + e);
  }
  static const char* known[] = {"bump", "eigsum",  "abs",
                                "heaviside", "cosine", "mix"};
  if (std::find(std::begin(known), std::end(known), integrand) ==
      std::end(known))
    throw std::invalid_argument("config: unknown integrand " + integrand);
}

EstimateReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const JacobiParams params = resolve_params(config);
  const int d = config.d;
  const int r_count = config.replicates;

  EstimateReport report;
  report.param_a = params.a;
  report.param_b = params.b;

  // Fixed-m eigsum shares one integrand across the sweep; the moving-target
  // variant (m = N + 1) is rebuilt per N below.
  Integrand shared_integrand;
  const bool moving_eigsum = config.integrand == "eigsum" && config.eigsum_m == 0;
  if (config.integrand == "eigsum") {
    if (!moving_eigsum) {
      auto basis = std::make_shared<BasisSpec>(params, config.eigsum_m);
      shared_integrand = eig_sum(basis, config.eigsum_m);
    }
  } else {
    shared_integrand =
        integrand_by_label(config.integrand, config.bump_eps, nullptr);
  }
  if (!moving_eigsum)
    report.truth =
        reference_integral(shared_integrand, params, config.quadrature_m);

  int nthreads = config.threads > 0
                     ? config.threads
                     : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::max(1, std::min(nthreads, r_count));

  const bool use_tridiagonal =
      config.sampler == SamplerChoice::kTridiagonal ||
      (config.sampler == SamplerChoice::kAuto && d == 1);
  if (config.sampler == SamplerChoice::kTridiagonal && d != 1)
    throw std::invalid_argument("tridiagonal sampler requires d = 1");

  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const int n = config.n_grid[ni];
    const BasisSpec spec(params, n);
    Integrand integrand = shared_integrand;
    if (moving_eigsum) {
      auto basis = std::make_shared<BasisSpec>(params, n + 1);
      integrand = eig_sum(basis, n + 1);
      report.truth = *integrand.reference_integral;
    }

    std::vector<ReplicateResult> results(r_count);
    std::atomic<int> next{0};
    auto worker = [&]() {
      std::unique_ptr<ChainRuleSampler> chain;
      if (!use_tridiagonal) chain = std::make_unique<ChainRuleSampler>(spec);
      int r;
      while ((r = next.fetch_add(1)) < r_count) {
        const std::uint64_t base =
            static_cast<std::uint64_t>(ni) * r_count + r;
        ReplicateResult& res = results[r];

        const bool need_dpp = wants(config, "bh") || wants(config, "ez");
        DppSample sample;
        std::int64_t sample_ns = 0;
        if (need_dpp) {
          RngStream rng(config.seed, 2 * base + 1);
          const auto t0 = std::chrono::steady_clock::now();
          sample = use_tridiagonal
                       ? sample_univariate_tridiagonal(n, params.a[0],
                                                       params.b[0], rng)
                       : chain->sample(rng);
          sample_ns = elapsed_ns_since(t0);
        }

        if (wants(config, "bh")) {
          const auto t0 = std::chrono::steady_clock::now();
          RowRecord row{"bh", d, n, r, 0.0, false,
                        std::numeric_limits<double>::quiet_NaN(),
                        sample.total_rejections(), 0};
          row.value = bh_estimate(spec, sample, integrand);
          row.elapsed_ns = sample_ns + elapsed_ns_since(t0);
          res.rows.push_back(std::move(row));
        }
        if (wants(config, "ez")) {
          const auto t0 = std::chrono::steady_clock::now();
          RowRecord row{"ez", d, n, r, 0.0, false, 0.0,
                        sample.total_rejections(), 0};
          try {
            const CoefficientEstimates c =
                ez_coefficients(spec, sample, integrand);
            row.value = std::sqrt(total_mass(params)) * c.y[0];
            row.cond_estimate = c.condition_estimate;
          } catch (const ConditioningError& err) {
            row.failed = true;
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.cond_estimate = err.condition_estimate;
          }
          row.elapsed_ns = sample_ns + elapsed_ns_since(t0);
          res.rows.push_back(std::move(row));
        }
        if (wants(config, "mc")) {
          RngStream rng(config.seed, 2 * base + 2);
          const auto t0 = std::chrono::steady_clock::now();
          RowRecord row{"mc", d, n, r, 0.0, false,
                        std::numeric_limits<double>::quiet_NaN(), 0, 0};
          row.value = vanilla_mc_estimate(params, n, integrand, rng);
          row.elapsed_ns = elapsed_ns_since(t0);
          res.rows.push_back(std::move(row));
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    // Merge in deterministic (estimator order within replicate) order.
    for (int r = 0; r < r_count; ++r)
      for (auto& row : results[r].rows) report.rows.push_back(std::move(row));
  }

  // Summaries per (estimator, N) and slope fits per estimator.
  for (const auto& name : config.estimators) {
    std::vector<double> grid_n, grid_var;
    for (int n : config.n_grid) {
      std::vector<double> values;
      int failures = 0;
      double rej_sum = 0.0, ns_sum = 0.0;
      int count = 0;
      for (const auto& row : report.rows) {
        if (row.estimator != name || row.n != n) continue;
        ++count;
        rej_sum += static_cast<double>(row.rejections);
        ns_sum += static_cast<double>(row.elapsed_ns);
        if (row.failed) {
          ++failures;
        } else {
          values.push_back(row.value);
        }
      }
      EstimatorSummary summary;
      summary.estimator = name;
      summary.n = n;
      summary.stats = summarize(values);
      summary.failures = failures;
      summary.mean_rejections = count > 0 ? rej_sum / count : 0.0;
      summary.mean_elapsed_ns = count > 0 ? ns_sum / count : 0.0;
      if (values.size() >= 20) summary.ks = ks_normal(values);
      report.max_failure_count = std::max(report.max_failure_count, failures);
      grid_n.push_back(static_cast<double>(n));
      grid_var.push_back(summary.stats.variance);
      report.summaries.push_back(std::move(summary));
    }
    if (grid_n.size() >= 3) {
      try {
        report.variance_slopes[name] = fit_loglog_slope(grid_n, grid_var);
      } catch (const std::invalid_argument&) {
        // fewer than 3 positive variances (e.g. exact estimators): no fit
      }
    }
  }

  if (!config.output_path.empty()) {
    std::ofstream os(config.output_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + config.output_path);
    write_rows_csv(os, report.rows);
  }
  return report;
}

void write_rows_csv(std::ostream& os, const std::vector<RowRecord>& rows) {
  os << "estimator,d,N,replicate,value,failed,cond_estimate,rejections,"
        "elapsed_ns\n";
  for (const auto& row : rows) {
    os << row.estimator << ',' << row.d << ',' << row.n << ',' << row.replicate
       << ',' << format_double(row.value) << ',' << (row.failed ? 1 : 0) << ','
       << format_double(row.cond_estimate) << ',' << row.rejections << ','
       << row.elapsed_ns << '\n';
  }
}

void print_report(std::ostream& os, const ExperimentConfig& config,
                  const EstimateReport& report) {
  os << "integrand=" << config.integrand << " d=" << config.d
     << " R=" << config.replicates << " seed=" << config.seed << "\n";
  os << "params a=";
  for (double v : report.param_a) os << format_double(v) << ' ';
  os << " b=";
  for (double v : report.param_b) os << format_double(v) << ' ';
  os << "\n";
  os << "reference integral = " << format_double(report.truth) << "\n";
  for (const auto& s : report.summaries) {
    os << s.estimator << " N=" << s.n << " mean=" << format_double(s.stats.mean)
       << " var=" << format_double(s.stats.variance)
       << " median=" << format_double(s.stats.median)
       << " iqr=" << format_double(s.stats.iqr) << " failures=" << s.failures
       << " mean_rejections=" << s.mean_rejections;
    if (s.stats.count >= 20) {
      os << " ks_stat=" << format_double(s.ks.statistic)
         << " ks_p~=" << format_double(s.ks.p_value)
         << (s.ks.degenerate ? " (degenerate)" : " (approx)");
    }
    os << "\n";
  }
  for (const auto& [name, fit] : report.variance_slopes) {
    os << name << " variance slope=" << format_double(fit.slope)
       << " r2=" << format_double(fit.r2) << " points=" << fit.used;
    if (fit.skipped > 0) os << " skipped=" << fit.skipped;
    os << "\n";
  }
}

std::vector<BenchRow> bench_sampler(const std::vector<int>& d_grid,
                                    const std::vector<int>& n_grid,
                                    int replicates, std::uint64_t seed) {
  std::vector<BenchRow> rows;
  std::uint64_t stream = 1;
  for (int d : d_grid) {
    const JacobiParams params = JacobiParams::constant(d, -0.5, -0.5);
    for (int n : n_grid) {
      std::vector<std::string> methods;
      if (d == 1) methods = {"tridiagonal", "chain"};
      else methods = {"chain"};
      const BasisSpec spec(params, n);
      for (const auto& method : methods) {
        double rej_sum = 0.0, ns_sum = 0.0;
        std::unique_ptr<ChainRuleSampler> chain;
        if (method == "chain")
          chain = std::make_unique<ChainRuleSampler>(spec);
        for (int r = 0; r < replicates; ++r) {
          RngStream rng(seed, stream++);
          const auto t0 = std::chrono::steady_clock::now();
          DppSample sample =
              method == "tridiagonal"
                  ? sample_univariate_tridiagonal(n, -0.5, -0.5, rng)
                  : chain->sample(rng);
          ns_sum += static_cast<double>(elapsed_ns_since(t0));
          rej_sum += static_cast<double>(sample.total_rejections());
        }
        BenchRow row;
        row.d = d;
        row.n = n;
        row.method = method;
        row.mean_rejections = rej_sum / replicates;
        row.rejection_ratio =
            row.mean_rejections /
            (std::pow(2.0, d) * n * std::log(static_cast<double>(n)));
        row.mean_elapsed_ns = ns_sum / replicates;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "d,N,method,mean_rejections,rejection_ratio,mean_elapsed_ns\n";
  for (const auto& row : rows) {
    os << row.d << ',' << row.n << ',' << row.method << ','
       << format_double(row.mean_rejections) << ','
       << format_double(row.rejection_ratio) << ','
       << format_double(row.mean_elapsed_ns) << '\n';
  }
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> entries;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) return std::string();
      const auto last = s.find_last_not_of(" \t\r");
      return s.substr(first, last - first + 1);
    };
    if (strip(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line missing '=': " + line);
    entries[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
  }
  return entries;
}

namespace {

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, std::string>& entries) {
  for (const auto& [key, value] : entries) {
    if (key == "integrand") {
      config.integrand = value;
    } else if (key == "bump_eps") {
      config.bump_eps = std::stod(value);
    } else if (key == "eigsum_m") {
      config.eigsum_m = std::stoi(value);
    } else if (key == "d") {
      config.d = std::stoi(value);
    } else if (key == "n_grid") {
      config.n_grid.clear();
      for (const auto& item : split_csv_list(value))
        config.n_grid.push_back(std::stoi(item));
    } else if (key == "replicates") {
      config.replicates = std::stoi(value);
    } else if (key == "estimators") {
      config.estimators = split_csv_list(value);
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else if (key == "policy") {
      if (value == "fixed") config.policy = ParamPolicy::kFixed;
      else if (value == "paper-random") config.policy = ParamPolicy::kPaperRandom;
      else throw std::runtime_error("unknown policy: " + value);
    } else if (key == "a") {
      config.a.clear();
      for (const auto& item : split_csv_list(value))
        config.a.push_back(std::stod(item));
    } else if (key == "b") {
      config.b.clear();
      for (const auto& item : split_csv_list(value))
        config.b.push_back(std::stod(item));
    } else if (key == "sampler") {
      if (value == "auto") config.sampler = SamplerChoice::kAuto;
      else if (value == "chain") config.sampler = SamplerChoice::kChainRule;
      else if (value == "tridiagonal") config.sampler = SamplerChoice::kTridiagonal;
      else throw std::runtime_error("unknown sampler: " + value);
    } else if (key == "quadrature_m") {
      config.quadrature_m = std::stoi(value);
    } else if (key == "output") {
      config.output_path = value;
    } else if (key == "threads") {
      config.threads = std::stoi(value);
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
}

}  // namespace dppquad
