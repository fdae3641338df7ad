#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sgt/bounded_testers.hpp"
#include "sgt/dense_testers.hpp"
#include "sgt/exact.hpp"
#include "sgt/generators.hpp"

namespace sgt {

inline constexpr const char* kReportSchema = "sgt-report/1";
inline constexpr const char* kScalingSchema = "sgt-scaling/1";

/// One tester (picked by model and property) over one instance and many seeds.
struct ExperimentConfig {
  Model model = Model::Dense;
  Property property = Property::Balance;     // Balance, Clusterable or TriangleFree
  TrianglePattern pattern = TrianglePattern(1);
  std::optional<std::string> instance_file;  // exactly one of file / gen
  std::optional<GenSpec> gen;
  double eps = 0.1;
  int trials = 1;
  std::uint64_t seed = 0;
  DenseParams dense;      // eps is taken from `eps`
  BoundedParams bounded;  // eps is taken from `eps`
  std::optional<int> workers;  // default: SGT_WORKERS, then hardware concurrency

  void check() const;
  bool one_sided() const { return !(model == Model::Dense && property == Property::Clusterable); }
  std::string tester_name() const;
};

struct TrialRecord {
  int index = 0;
  Verdict verdict;
  bool witness_valid = true;  // false only when a witness fails verification
  std::string witness_error;
  double wall_time_ms = 0.0;
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// 95% Wilson score interval for `successes` out of `trials`.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

struct ExperimentReport {
  ExperimentConfig config;
  Node n = 0;
  std::size_t edge_count = 0;
  std::optional<int> degree_bound;
  std::optional<InstanceMetadata> metadata;
  std::vector<TrialRecord> trials;
  std::uint64_t rejects = 0;
  double reject_rate = 0.0;
  WilsonInterval reject_interval;
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
  std::uint64_t exact_fallback_trials = 0;
  std::uint64_t invalid_witnesses = 0;
  double wall_time_ms = 0.0;
};

/// Loads or generates the instance named by `cfg`, then runs it.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Runs on a caller-supplied graph. Trials use stream t of RandomSource(seed)
/// and are reported in index order whatever the worker count.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const SignedGraph& g, const InstanceMetadata* meta = nullptr);

/// Runs one trial without the worker pool.
Verdict run_tester(const ExperimentConfig& cfg, const SignedGraph& g, RandomSource& rng);

int resolve_worker_count(std::optional<int> requested);

nlohmann::json to_json(const Witness& w);
Witness witness_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& cfg, Node n, std::optional<int> degree_bound);
nlohmann::json to_json(const ExperimentReport& r);

/// Copy of a report with every "wall_time_ms" member removed.
nlohmann::json strip_wall_time(const nlohmann::json& j);

struct ScalingPoint {
  Node n = 0;
  double mean_queries = 0.0;
  std::uint64_t max_queries = 0;
  double reject_rate = 0.0;
  std::uint64_t exact_fallback_trials = 0;
};

struct ScalingReport {
  std::vector<ScalingPoint> points;
  double exponent = 0.0;   // least-squares slope of ln(mean queries) on ln(N)
  double intercept = 0.0;  // ln A
  std::vector<ExperimentReport> runs;
};

/// Least-squares fit of ln y = intercept + exponent * ln x.
std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Runs `base` once per N with gen->n = N. Needs a generator spec and at least 3 sizes.
ScalingReport run_scaling(const ExperimentConfig& base, const std::vector<Node>& sizes);

nlohmann::json to_json(const ScalingReport& r);
std::string scaling_csv(const ScalingReport& r);

}  // namespace sgt
