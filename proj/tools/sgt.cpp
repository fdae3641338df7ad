// Command-line front end: gen, exact, test, bench, verify.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sgt/exact.hpp"
#include "sgt/generators.hpp"
#include "sgt/harness.hpp"

namespace {

using json = nlohmann::json;

struct GenFlags {
  std::string family;
  sgt::GenSpec spec;

  void add(CLI::App& app) {
    app.add_option("--family", family, "Instance family for generated input");
    app.add_option("--n", spec.n, "Node count")->capture_default_str();
    app.add_option("--d", spec.d, "Degree bound")->capture_default_str();
    app.add_option("--k", spec.k, "Number of communities")->capture_default_str();
    app.add_option("--planted-fraction", spec.planted_fraction, "Planted structure density")->capture_default_str();
    app.add_option("--gen-seed", spec.seed, "Generator seed")->capture_default_str();
    app.add_option("--gen-pattern", spec.pattern, "Triangle pattern for planted-triangles")->capture_default_str();
  }

  sgt::GenSpec resolve() const {
    sgt::GenSpec s = spec;
    s.family = sgt::parse_family(family);
    return s;
  }
};

struct TestFlags {
  std::string in;
  GenFlags gen;
  std::string model = "dense";
  std::string property = "balance";
  std::string pattern = "++-";
  double eps = 0.1;
  std::uint64_t seed = 0;
  int trials = 1;
  int workers = 0;
  std::uint64_t triple_samples = 0;
  bool no_fallback = false;
  sgt::DenseParams dense;
  sgt::BoundedParams bounded;

  void add(CLI::App& app) {
    app.add_option("--in", in, "Instance file (.sgl)");
    gen.add(app);
    app.add_option("--model", model, "dense or bounded")->capture_default_str();
    app.add_option("--property", property, "balance, clusterability or triangle")->capture_default_str();
    app.add_option("--pattern", pattern, "Triangle sign pattern, e.g. ++-")->capture_default_str();
    app.add_option("--eps", eps, "Proximity parameter in (0,1]")->capture_default_str();
    app.add_option("--seed", seed, "Base seed; trial t uses stream t")->capture_default_str();
    app.add_option("--trials", trials, "Number of trials")->capture_default_str();
    app.add_option("--workers", workers, "Worker threads (default SGT_WORKERS or all cores)");
    app.add_option("--triple-samples", triple_samples, "Dense triangle samples (default ceil(10/eps^3))");
    app.add_option("--c-b", dense.c_b)->capture_default_str();
    app.add_option("--c-e", dense.c_e)->capture_default_str();
    app.add_option("--c-c", dense.c_c)->capture_default_str();
    app.add_option("--subset-cap", dense.subset_cap)->capture_default_str();
    app.add_option("--local-search-restarts", dense.local_search_restarts)->capture_default_str();
    app.add_option("--local-search-move-factor", dense.local_search_move_factor)->capture_default_str();
    app.add_option("--c-t", bounded.c_t)->capture_default_str();
    app.add_option("--c1", bounded.c1)->capture_default_str();
    app.add_option("--c2", bounded.c2)->capture_default_str();
    app.add_option("--c3", bounded.c3)->capture_default_str();
    app.add_option("--c4", bounded.c4)->capture_default_str();
    app.add_option("--c5", bounded.c5)->capture_default_str();
    app.add_option("--c6", bounded.c6)->capture_default_str();
    app.add_option("--walk-length-eps-exponent", bounded.walk_length_eps_exponent)->capture_default_str();
    app.add_option("--walk-length-log-exponent", bounded.walk_length_log_exponent)->capture_default_str();
    app.add_option("--start-attempt-factor", bounded.start_attempt_factor)->capture_default_str();
    app.add_flag("--no-exact-fallback", no_fallback, "Never replace the walks by a full read");
  }

  sgt::ExperimentConfig resolve() const {
    sgt::ExperimentConfig cfg;
    cfg.model = sgt::parse_model(model);
    cfg.property = sgt::parse_property(property);
    cfg.pattern = sgt::TrianglePattern::parse(pattern);
    if (!in.empty()) cfg.instance_file = in;
    if (!gen.family.empty()) cfg.gen = gen.resolve();
    if (!cfg.instance_file && !cfg.gen) throw std::invalid_argument("give --in FILE or --family NAME");
    cfg.eps = eps;
    cfg.seed = seed;
    cfg.trials = trials;
    if (workers > 0) cfg.workers = workers;
    cfg.dense = dense;
    if (triple_samples > 0) cfg.dense.triple_samples = triple_samples;
    cfg.bounded = bounded;
    cfg.bounded.allow_exact_fallback = !no_fallback;
    return cfg;
  }
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::vector<sgt::Node> parse_sizes(const std::string& text) {
  std::vector<sgt::Node> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(static_cast<sgt::Node>(std::stoll(item)));
  }
  return out;
}

json run_exact(const sgt::SignedGraph& g, const std::string& check, const std::string& pattern_text, int k,
               const std::string& model_text, int d) {
  json out{{"check", check}, {"n", g.node_count()}, {"edge_count", g.edge_count()}};
  const auto pattern = sgt::TrianglePattern::parse(pattern_text);
  if (check == "balance") {
    auto r = sgt::is_balanced(g);
    out["holds"] = r.balanced();
    out["witness"] = r.witness ? sgt::to_json(*r.witness) : json(nullptr);
  } else if (check == "clusterability") {
    auto r = sgt::is_clusterable(g);
    out["holds"] = r.clusterable();
    out["witness"] = r.witness ? sgt::to_json(*r.witness) : json(nullptr);
    if (r.clusters) out["cluster_count"] = r.clusters->cluster_count();
  } else if (check == "triangle") {
    auto w = sgt::find_signed_triangle(g, pattern);
    out["pattern"] = pattern.str();
    out["holds"] = !w.has_value();
    out["witness"] = w ? sgt::to_json(*w) : json(nullptr);
  } else if (check == "frustration") {
    out["value"] = sgt::frustration_index(g);
  } else if (check == "k-frustration") {
    out["k"] = k;
    out["value"] = sgt::k_frustration_index(g, k);
  } else if (check == "weak-frustration") {
    out["value"] = sgt::weak_frustration_index(g);
  } else if (check.starts_with("certify-")) {
    const auto property = sgt::parse_property(check.substr(8));
    const auto model = sgt::parse_model(model_text);
    const int bound = d > 0 ? d : g.degree_bound().value_or(g.max_degree());
    auto c = sgt::certify(g, property, model, bound, k,
                          property == sgt::Property::TriangleFree ? std::optional(pattern) : std::nullopt);
    out["certificate"] = c ? sgt::to_json(*c) : json("too-large");
  } else {
    throw std::invalid_argument("unknown check '" + check + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sublinear property testers for signed graphs"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate an instance (.sgl plus metadata JSON)");
  GenFlags gen_flags;
  gen_flags.add(*gen);
  gen->get_option("--family")->required();
  std::string gen_out, gen_meta;
  gen->add_option("--out", gen_out, "Output .sgl path")->required();
  gen->add_option("--meta", gen_meta, "Metadata JSON path (default: OUT.json)");

  auto* exact = app.add_subcommand("exact", "Run an exact checker on a graph file");
  std::string exact_in, exact_check = "balance", exact_pattern = "++-", exact_model = "bounded", exact_out;
  int exact_k = 2, exact_d = 0;
  exact->add_option("--in", exact_in, "Instance file (.sgl)")->required();
  exact->add_option("--check", exact_check,
                    "balance, clusterability, triangle, frustration, k-frustration, weak-frustration, "
                    "certify-{balance,clusterability,triangle}")
      ->capture_default_str();
  exact->add_option("--pattern", exact_pattern)->capture_default_str();
  exact->add_option("--k", exact_k)->capture_default_str();
  exact->add_option("--model", exact_model, "Normalisation for certify-*")->capture_default_str();
  exact->add_option("--d", exact_d, "Degree bound for certify-* (default: file's bound)");
  exact->add_option("--out", exact_out, "Output JSON path (default stdout)");

  auto* test = app.add_subcommand("test", "Run one tester over one instance and many seeds");
  TestFlags test_flags;
  test_flags.add(*test);
  std::string test_out;
  test->add_option("--out", test_out, "Report JSON path (default stdout)");

  auto* bench = app.add_subcommand("bench", "Scaling runs over several instance sizes");
  TestFlags bench_flags;
  bench_flags.add(*bench);
  std::string bench_out, bench_csv, n_list;
  bench->add_option("--n-list", n_list, "Comma-separated sizes, e.g. 1000,10000,100000")->required();
  bench->add_option("--out", bench_out, "Report JSON path (default stdout)");
  bench->add_option("--csv", bench_csv, "Optional CSV of the scaling table");

  auto* verify = app.add_subcommand("verify", "Check a witness file against a graph");
  std::string verify_graph, verify_witness, verify_pattern;
  verify->add_option("--graph", verify_graph, "Instance file (.sgl)")->required();
  verify->add_option("--witness", verify_witness, "Witness JSON: {kind, nodes, signs}")->required();
  verify->add_option("--pattern", verify_pattern, "Expected triangle pattern");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const auto inst = sgt::generate(gen_flags.resolve());
      write_text(gen_out, sgt::to_edge_list(inst.graph));
      write_text(gen_meta.empty() ? gen_out + ".json" : gen_meta, dump(sgt::to_json(inst.metadata)));
    } else if (exact->parsed()) {
      const auto g = sgt::load_edge_list_file(exact_in);
      write_text(exact_out, dump(run_exact(g, exact_check, exact_pattern, exact_k, exact_model, exact_d)));
    } else if (test->parsed()) {
      const auto report = sgt::run_experiment(test_flags.resolve());
      write_text(test_out, dump(sgt::to_json(report)));
    } else if (bench->parsed()) {
      const auto report = sgt::run_scaling(bench_flags.resolve(), parse_sizes(n_list));
      write_text(bench_out, dump(sgt::to_json(report)));
      if (!bench_csv.empty()) write_text(bench_csv, sgt::scaling_csv(report));
    } else if (verify->parsed()) {
      const auto g = sgt::load_edge_list_file(verify_graph);
      std::ifstream in(verify_witness);
      if (!in) throw std::runtime_error("cannot read " + verify_witness);
      const auto w = sgt::witness_from_json(json::parse(in));
      std::optional<sgt::TrianglePattern> pattern;
      if (!verify_pattern.empty()) pattern = sgt::TrianglePattern::parse(verify_pattern);
      const auto err = sgt::verify_witness(g, w, pattern);
      std::cout << dump(json{{"valid", !err.has_value()}, {"reason", err ? json(*err) : json(nullptr)}});
    }
  } catch (const std::exception& e) {
    std::cerr << "sgt: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
