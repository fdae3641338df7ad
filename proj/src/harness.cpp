#include "sgt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace sgt {
namespace {

using json = nlohmann::json;

DenseParams dense_params(const ExperimentConfig& cfg) {
  DenseParams p = cfg.dense;
  p.eps = cfg.eps;
  return p;
}

BoundedParams bounded_params(const ExperimentConfig& cfg) {
  BoundedParams p = cfg.bounded;
  p.eps = cfg.eps;
  return p;
}

std::string signs_string(const std::vector<Sign>& signs) {
  std::string s;
  for (Sign x : signs) s += to_char(x);
  return s;
}

json dense_json(const DenseParams& p) {
  return json{{"triple_samples", p.resolved_triple_samples()},
              {"c_b", p.c_b},
              {"c_e", p.c_e},
              {"c_c", p.c_c},
              {"subset_cap", p.subset_cap},
              {"local_search_restarts", p.local_search_restarts},
              {"local_search_move_factor", p.local_search_move_factor},
              {"balance_sample_size", p.balance_sample_size()},
              {"cluster_count_bound", p.cluster_count_bound()},
              {"clusterability_subset_size", p.clusterability_subset_size()},
              {"edge_count_samples", p.edge_count_samples(p.eps / 8.0)}};
}

json plan_json(const WalkParams& w) {
  return json{{"starts", w.starts},
              {"walks_per_start", w.walks_per_start},
              {"walk_length", w.walk_length},
              {"query_budget", w.query_budget},
              {"exact_fallback", w.exact_fallback}};
}

json bounded_json(const ExperimentConfig& cfg, const BoundedParams& p, Node n, std::optional<int> d) {
  json j{{"c_t", p.c_t},
         {"c1", p.c1},
         {"c2", p.c2},
         {"c3", p.c3},
         {"c4", p.c4},
         {"c5", p.c5},
         {"c6", p.c6},
         {"walk_length_eps_exponent", p.walk_length_eps_exponent},
         {"walk_length_log_exponent", p.walk_length_log_exponent},
         {"start_attempt_factor", p.start_attempt_factor},
         {"allow_exact_fallback", p.allow_exact_fallback},
         {"walk_plan", nullptr}};
  if (cfg.model == Model::Bounded && d) {
    if (cfg.property == Property::Balance) j["walk_plan"] = plan_json(plan_balance_walks(n, *d, p));
    if (cfg.property == Property::Clusterable) j["walk_plan"] = plan_json(plan_clusterability_walks(n, *d, p));
  }
  return j;
}

}  // namespace

void ExperimentConfig::check() const {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (property == Property::KClusterable) throw std::invalid_argument("no tester for k-clusterability");
  if (instance_file && gen) throw std::invalid_argument("give either an instance file or a generator spec, not both");
  if (workers && *workers < 1) throw std::invalid_argument("workers must be positive");
  dense_params(*this).check();
  bounded_params(*this).check();
}

std::string ExperimentConfig::tester_name() const {
  const std::string prop = property == Property::TriangleFree ? "triangle" : to_string(property);
  return to_string(model) + "-" + prop;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {};
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / nt;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * nt)) / (1.0 + z2 / nt);
  const double half = z * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt)) / (1.0 + z2 / nt);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

int resolve_worker_count(std::optional<int> requested) {
  if (requested) return std::max(1, *requested);
  if (const char* env = std::getenv("SGT_WORKERS")) {
    try {
      const int v = std::stoi(env);
      if (v >= 1) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument("SGT_WORKERS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Verdict run_tester(const ExperimentConfig& cfg, const SignedGraph& g, RandomSource& rng) {
  if (cfg.model == Model::Dense) {
    DenseOracle o(g);
    const DenseParams p = dense_params(cfg);
    switch (cfg.property) {
      case Property::Balance: return test_balance_dense(o, p, rng);
      case Property::TriangleFree: return test_triangle_dense(o, cfg.pattern, p, rng);
      case Property::Clusterable: return test_clusterability_dense(o, p, rng);
      case Property::KClusterable: break;
    }
  } else {
    if (!g.degree_bound()) throw std::invalid_argument("bounded-model tester needs a graph with a degree bound");
    BoundedDegreeOracle o(g);
    const BoundedParams p = bounded_params(cfg);
    switch (cfg.property) {
      case Property::Balance: return test_balance_bounded(o, p, rng);
      case Property::TriangleFree: return test_triangle_bounded(o, cfg.pattern, p, rng);
      case Property::Clusterable: return test_clusterability_bounded(o, p, rng);
      case Property::KClusterable: break;
    }
  }
  throw std::invalid_argument("no tester for k-clusterability");
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.check();
  if (cfg.instance_file) return run_experiment(cfg, load_edge_list_file(*cfg.instance_file));
  if (!cfg.gen) throw std::invalid_argument("experiment needs an instance file or a generator spec");
  const GeneratedInstance inst = generate(*cfg.gen);
  return run_experiment(cfg, inst.graph, &inst.metadata);
}

ExperimentReport run_experiment(const ExperimentConfig& cfg, const SignedGraph& g, const InstanceMetadata* meta) {
  cfg.check();
  if (cfg.model == Model::Bounded && !g.degree_bound()) {
    throw std::invalid_argument("bounded-model tester needs a graph with a degree bound");
  }
  if (cfg.model == Model::Dense && g.node_count() < 2) throw std::invalid_argument("dense testers need at least 2 nodes");

  ExperimentReport report;
  report.config = cfg;
  report.n = g.node_count();
  report.edge_count = g.edge_count();
  report.degree_bound = g.degree_bound();
  if (meta) report.metadata = *meta;
  report.trials.resize(static_cast<std::size_t>(cfg.trials));

  std::vector<RandomSource> streams;
  streams.reserve(report.trials.size());
  RandomSource cursor(cfg.seed);
  for (int t = 0; t < cfg.trials; ++t) {
    streams.push_back(cursor);
    cursor.jump();
  }

  const std::optional<TrianglePattern> pattern =
      cfg.property == Property::TriangleFree ? std::optional<TrianglePattern>(cfg.pattern) : std::nullopt;
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (int t = next++; t < cfg.trials && !failed; t = next++) {
      try {
        auto& rec = report.trials[static_cast<std::size_t>(t)];
        const auto start = std::chrono::steady_clock::now();
        rec.index = t;
        rec.verdict = run_tester(cfg, g, streams[static_cast<std::size_t>(t)]);
        rec.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (rec.verdict.witness) {
          if (auto err = verify_witness(g, *rec.verdict.witness, pattern)) {
            rec.witness_valid = false;
            rec.witness_error = *err;
          }
        } else if (cfg.one_sided() && rec.verdict.decision == Decision::Reject) {
          rec.witness_valid = false;
          rec.witness_error = "one-sided reject without witness";
        }
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  const auto started = std::chrono::steady_clock::now();
  const int workers = std::min(resolve_worker_count(cfg.workers), cfg.trials);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  report.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

  double total = 0.0;
  for (const auto& rec : report.trials) {
    report.rejects += rec.verdict.decision == Decision::Reject;
    total += static_cast<double>(rec.verdict.queries_used);
    report.max_queries = std::max(report.max_queries, rec.verdict.queries_used);
    report.exact_fallback_trials += rec.verdict.exact_fallback;
    report.invalid_witnesses += !rec.witness_valid;
  }
  report.reject_rate = static_cast<double>(report.rejects) / cfg.trials;
  report.reject_interval = wilson_interval(report.rejects, static_cast<std::uint64_t>(cfg.trials));
  report.mean_queries = total / cfg.trials;
  return report;
}

json to_json(const Witness& w) {
  return json{{"kind", to_string(w.kind)}, {"nodes", w.nodes}, {"signs", signs_string(w.signs)}};
}

Witness witness_from_json(const json& j) {
  Witness w;
  w.kind = parse_witness_kind(j.at("kind").get<std::string>());
  w.nodes = j.at("nodes").get<std::vector<Node>>();
  for (char c : j.at("signs").get<std::string>()) {
    if (c != '+' && c != '-') throw std::invalid_argument("witness signs must be + or -");
    w.signs.push_back(c == '+' ? Sign::Plus : Sign::Minus);
  }
  return w;
}

json to_json(const ExperimentConfig& cfg, Node n, std::optional<int> degree_bound) {
  json instance;
  if (cfg.instance_file) instance = json{{"file", *cfg.instance_file}, {"gen", nullptr}};
  else if (cfg.gen) instance = json{{"file", nullptr}, {"gen", to_json(*cfg.gen)}};
  else instance = json{{"file", nullptr}, {"gen", nullptr}};
  return json{{"tester", cfg.tester_name()},
              {"model", to_string(cfg.model)},
              {"property", to_string(cfg.property)},
              {"pattern", cfg.property == Property::TriangleFree ? json(cfg.pattern.str()) : json(nullptr)},
              {"one_sided", cfg.one_sided()},
              {"eps", cfg.eps},
              {"trials", cfg.trials},
              {"seed", cfg.seed},
              {"instance", instance},
              {"dense", dense_json(dense_params(cfg))},
              {"bounded", bounded_json(cfg, bounded_params(cfg), n, degree_bound)}};
}

json to_json(const ExperimentReport& r) {
  json trials = json::array();
  for (const auto& rec : r.trials) {
    const auto& v = rec.verdict;
    trials.push_back(json{{"index", rec.index},
                          {"decision", to_string(v.decision)},
                          {"queries_used", v.queries_used},
                          {"query_budget", v.query_budget},
                          {"exact_fallback", v.exact_fallback},
                          {"estimate", v.estimate ? json(*v.estimate) : json(nullptr)},
                          {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
                          {"witness_valid", rec.witness_valid},
                          {"witness_error", rec.witness_error.empty() ? json(nullptr) : json(rec.witness_error)},
                          {"wall_time_ms", rec.wall_time_ms}});
  }
  return json{{"schema_version", kReportSchema},
              {"config", to_json(r.config, r.n, r.degree_bound)},
              {"instance",
               {{"n", r.n},
                {"edge_count", r.edge_count},
                {"degree_bound", r.degree_bound ? json(*r.degree_bound) : json(nullptr)},
                {"metadata", r.metadata ? to_json(*r.metadata) : json(nullptr)}}},
              {"trials", trials},
              {"aggregate",
               {{"trials", r.trials.size()},
                {"rejects", r.rejects},
                {"reject_rate", r.reject_rate},
                {"reject_rate_wilson_low", r.reject_interval.low},
                {"reject_rate_wilson_high", r.reject_interval.high},
                {"mean_queries", r.mean_queries},
                {"max_queries", r.max_queries},
                {"exact_fallback_trials", r.exact_fallback_trials},
                {"invalid_witnesses", r.invalid_witnesses}}},
              {"wall_time_ms", r.wall_time_ms}};
}

json strip_wall_time(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : j.items()) {
      if (key != "wall_time_ms") out[key] = strip_wall_time(value);
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(strip_wall_time(v));
    return out;
  }
  return j;
}

std::pair<double, double> loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit needs matching series of 2+ points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("log-log fit needs positive values");
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("log-log fit needs distinct sizes");
  const double slope = (k * sxy - sx * sy) / denom;
  return {slope, (sy - slope * sx) / k};
}

ScalingReport run_scaling(const ExperimentConfig& base, const std::vector<Node>& sizes) {
  if (sizes.size() < 3) throw std::invalid_argument("need >= 3 points");
  if (!base.gen) throw std::invalid_argument("scaling runs need a generator spec");
  ScalingReport out;
  std::vector<double> xs, ys;
  for (Node n : sizes) {
    ExperimentConfig cfg = base;
    cfg.gen->n = n;
    auto report = run_experiment(cfg);
    out.points.push_back({n, report.mean_queries, report.max_queries, report.reject_rate, report.exact_fallback_trials});
    xs.push_back(static_cast<double>(n));
    ys.push_back(std::max(1.0, report.mean_queries));
    out.runs.push_back(std::move(report));
  }
  std::tie(out.exponent, out.intercept) = loglog_fit(xs, ys);
  return out;
}

json to_json(const ScalingReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    points.push_back(json{{"n", p.n},
                          {"mean_queries", p.mean_queries},
                          {"max_queries", p.max_queries},
                          {"reject_rate", p.reject_rate},
                          {"exact_fallback_trials", p.exact_fallback_trials}});
  }
  json runs = json::array();
  for (const auto& run : r.runs) runs.push_back(to_json(run));
  return json{{"schema_version", kScalingSchema}, {"points", points}, {"exponent", r.exponent}, {"intercept", r.intercept},
              {"runs", runs}};
}

std::string scaling_csv(const ScalingReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "n,mean_queries,max_queries,reject_rate,exact_fallback_trials\n";
  for (const auto& p : r.points) {
    os << p.n << ',' << p.mean_queries << ',' << p.max_queries << ',' << p.reject_rate << ',' << p.exact_fallback_trials << '\n';
  }
  return os.str();
}

}  // namespace sgt
