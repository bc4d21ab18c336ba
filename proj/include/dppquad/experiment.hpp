#ifndef DPPQUAD_EXPERIMENT_HPP_
#define DPPQUAD_EXPERIMENT_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dppquad/basis.hpp"
#include "dppquad/stats.hpp"

namespace dppquad {

enum class ParamPolicy { kFixed, kPaperRandom };
enum class SamplerChoice { kAuto, kChainRule, kTridiagonal };

struct ExperimentConfig {
  std::string integrand = "bump";
  double bump_eps = 0.05;
  int eigsum_m = 70;  // 0 means the moving target m = N + 1
  int d = 1;
  std::vector<int> n_grid;
  int replicates = 100;
  std::vector<std::string> estimators = {"bh", "ez", "mc"};
  std::uint64_t seed = 0;
  ParamPolicy policy = ParamPolicy::kFixed;
  std::vector<double> a;  // fixed policy; broadcast when size 1, zeros when empty
  std::vector<double> b;
  SamplerChoice sampler = SamplerChoice::kAuto;
  int quadrature_m = 200;
  std::string output_path;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct RowRecord {
  std::string estimator;
  int d = 0;
  int n = 0;
  int replicate = 0;
  double value = 0.0;
  bool failed = false;
  double cond_estimate = 0.0;
  std::uint64_t rejections = 0;
  std::int64_t elapsed_ns = 0;
};

struct EstimatorSummary {
  std::string estimator;
  int n = 0;
  Summary stats;
  int failures = 0;
  KsResult ks;
  double mean_rejections = 0.0;
  double mean_elapsed_ns = 0.0;
};

struct EstimateReport {
  std::vector<RowRecord> rows;
  std::vector<EstimatorSummary> summaries;
  std::map<std::string, SlopeFit> variance_slopes;
  std::vector<double> param_a;  // parameters actually used (logged for
  std::vector<double> param_b;  // the paper-random policy)
  double truth = 0.0;
  int max_failure_count = 0;  // worst failure count over (estimator, N)
};

/// Full sweep: one DPP sample per (N, replicate) shared by BH and EZ, an
/// independent i.i.d. sample for MC; deterministic given the master seed.
EstimateReport run_experiment(const ExperimentConfig& config);

/// CSV schema: estimator,d,N,replicate,value,failed,cond_estimate,
/// rejections,elapsed_ns. LF line endings.
void write_rows_csv(std::ostream& os, const std::vector<RowRecord>& rows);

void print_report(std::ostream& os, const ExperimentConfig& config,
                  const EstimateReport& report);

struct BenchRow {
  int d = 0;
  int n = 0;
  std::string method;
  double mean_rejections = 0.0;
  double rejection_ratio = 0.0;  // rejections / (2^d N ln N)
  double mean_elapsed_ns = 0.0;
};

/// Sampler scaling sweep; for d = 1 both the tridiagonal and chain-rule
/// methods are reported.
std::vector<BenchRow> bench_sampler(const std::vector<int>& d_grid,
                                    const std::vector<int>& n_grid,
                                    int replicates, std::uint64_t seed);

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

/// Flat key=value config file; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Applies parsed keys onto a config (unknown keys are an error).
void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, std::string>& entries);

}  // namespace dppquad

#endif  // DPPQUAD_EXPERIMENT_HPP_
