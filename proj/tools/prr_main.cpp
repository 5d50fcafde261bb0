// prr: rigidity and solvability analysis for pseudorange frameworks and
// cooperative GNSS scenarios.
//
// Subcommands: analyze, decompose, estimate, generate, formation.
// Exit codes: 0 ok, 1 input error, 2 estimation not converged, 3 rigidity
// assertion failed.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "prr/combinatorics.hpp"
#include "prr/gnss.hpp"
#include "prr/io.hpp"
#include "prr/rigidity.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitAssertFailed = 3;

struct CommonFlags {
  int dim = 2;
  int trials = 5;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool json = false;
};

prr::ordered_json edge_list_json(const prr::SimpleGraph& g) {
  prr::ordered_json arr = prr::ordered_json::array();
  for (const prr::Edge& e : g.edges()) arr.push_back({e.u, e.v});
  return arr;
}

std::string edge_list_text(const prr::SimpleGraph& g) {
  std::string out;
  for (const prr::Edge& e : g.edges()) {
    if (!out.empty()) out += " ";
    out += std::to_string(e.u) + "-" + std::to_string(e.v);
  }
  return out.empty() ? "(none)" : out;
}

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct AnalysisOutcome {
  prr::ordered_json report;
  bool rigid = false;
};

// Shared by analyze and decompose: run both the numeric and the
// combinatorial route on whatever the file contains.
AnalysisOutcome run_analysis(const std::string& path, const CommonFlags& flags,
                             bool with_witness) {
  const std::string bytes = prr::read_file(path);
  const prr::json doc = prr::parse_json(bytes, path);
  const prr::TolerancePolicy tol{flags.tol};

  AnalysisOutcome out;
  prr::ordered_json& report = out.report;
  report["input"] = path;
  report["digest"] = prr::content_digest(bytes);

  prr::GnssGraph graph;
  int dimension = flags.dim;
  bool has_gnss_parts = false;
  std::optional<prr::Scenario> scenario_doc;
  std::optional<prr::SolvabilityReport> solvability;
  if (prr::detect_input_kind(doc) == prr::InputKind::kScenario) {
    scenario_doc = prr::scenario_from_json(doc);
    const prr::Scenario& scenario = *scenario_doc;
    dimension = scenario.dimension;
    has_gnss_parts = true;
    graph = prr::build_gnss_graph(scenario);
    report["kind"] = "scenario";
    report["receivers"] = scenario.receiver_count();
    report["constellations"] = scenario.constellation_count();
    report["measurements"] = scenario.measurement_count();
    report["min_measurements"] =
        prr::min_measurements(std::max(scenario.receiver_count(), 1),
                              std::max(scenario.constellation_count(), 1),
                              dimension);
  } else {
    const prr::LoadedGraph loaded = prr::graph_from_json(doc);
    graph = loaded.graph;
    has_gnss_parts = loaded.has_gnss_parts;
    report["kind"] = has_gnss_parts ? "gnss_graph" : "pseudorange_graph";
  }

  const int n = graph.vertex_count();
  report["n"] = n;
  report["dimension"] = dimension;
  report["seed"] = flags.seed;
  report["bound"] = prr::s_p(n, dimension);

  prr::GenericRankResult numeric;
  prr::DecompositionSearch search;
  if (scenario_doc.has_value()) {
    solvability = prr::is_solvable(*scenario_doc, flags.seed, flags.trials);
    numeric = solvability->numeric;
    search = solvability->decomposition;
    if (!solvability->warning.empty()) report["warning"] = solvability->warning;
  } else if (has_gnss_parts) {
    numeric = prr::generic_gnss_rank_numeric(graph, dimension, flags.trials,
                                             flags.seed, {}, tol);
    search = prr::find_gnss_decomposition(graph, dimension, flags.seed);
  } else {
    numeric = prr::generic_rank_numeric(graph.gamma, dimension, flags.trials,
                                        flags.seed, {}, tol);
    search = prr::find_rigid_decomposition(
        prr::underlying_multigraph(graph.gamma), dimension, flags.seed);
  }

  report["numeric"] = {{"rank", numeric.rank},
                       {"trials", flags.trials},
                       {"trials_agree", numeric.trials_agree},
                       {"seeds", numeric.seeds}};
  report["combinatorial"] = {{"rank", search.rank},
                             {"rank_d", search.witness.rank_d},
                             {"rank_s", search.witness.rank_s}};
  const bool combinatorial_ran = !solvability || solvability->combinatorial_ran;
  report["verdicts_agree"] =
      !combinatorial_ran ||
      (static_cast<int>(numeric.rank) == search.rank);

  out.rigid = static_cast<int>(numeric.rank) == report["bound"].get<int>();
  report["rigid"] = out.rigid;
  report["flex_dofs"] = report["bound"].get<int>() - static_cast<int>(numeric.rank);
  if (solvability.has_value()) report["solvable"] = solvability->solvable;

  if (with_witness) {
    if (search.rigid) {
      report["witness"] = {
          {"edges_distance", edge_list_json(search.witness.decomposition.g_d)},
          {"edges_sync", edge_list_json(search.witness.decomposition.g_s)},
          {"rank_d", search.witness.rank_d},
          {"rank_s", search.witness.rank_s}};
    } else {
      report["deficit"] = search.deficit;
      report["best_split"] = {
          {"edges_distance", edge_list_json(search.witness.decomposition.g_d)},
          {"edges_sync", edge_list_json(search.witness.decomposition.g_s)},
          {"rank_d", search.witness.rank_d},
          {"rank_s", search.witness.rank_s}};
    }
  }
  return out;
}

void print_analysis_text(const prr::ordered_json& report, bool is_decompose) {
  std::cout << "input: " << report["input"].get<std::string>() << " (digest "
            << report["digest"].get<std::string>() << ")\n";
  std::cout << "kind: " << report["kind"].get<std::string>()
            << "  n=" << report["n"] << "  d=" << report["dimension"] << "\n";
  std::cout << "numeric rank: " << report["numeric"]["rank"] << " / "
            << report["bound"] << "  (seed " << report["seed"] << ", trials "
            << report["numeric"]["trials"] << ")\n";
  std::cout << "matroid rank: " << report["combinatorial"]["rank"] << " / "
            << report["bound"] << "  (rank_d "
            << report["combinatorial"]["rank_d"] << ", rank_s "
            << report["combinatorial"]["rank_s"] << ")\n";
  if (report.contains("warning")) {
    std::cout << "warning: " << report["warning"].get<std::string>() << "\n";
  }
  if (!report["numeric"]["trials_agree"].get<bool>()) {
    std::cout << "warning: rank varied across sampled configurations; "
                 "non-generic sample suspected\n";
  }
  const bool rigid = report["rigid"].get<bool>();
  std::string verdict = rigid ? "rigid" : "flexible";
  if (report.contains("solvable")) {
    verdict = report["solvable"].get<bool>() ? "solvable" : "unsolvable";
  }
  std::cout << "verdict: " << verdict << ", rank " << report["numeric"]["rank"]
            << " / " << report["bound"];
  if (!rigid) std::cout << " (flex dofs " << report["flex_dofs"] << ")";
  std::cout << "\n";
  if (is_decompose) {
    const char* key = report.contains("witness") ? "witness" : "best_split";
    const auto& split = report[key];
    if (report.contains("deficit")) {
      std::cout << "no rigid decomposition: deficit " << report["deficit"]
                << "; best split found:\n";
    } else {
      std::cout << "rigid decomposition witness:\n";
    }
    auto graph_of = [&split](const char* edges_key, int n) {
      std::vector<prr::Edge> edges;
      for (const auto& e : split[edges_key]) {
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
      }
      return prr::SimpleGraph(n, edges);
    };
    const int n = report["n"].get<int>();
    std::cout << "  G_D (rank " << split["rank_d"]
              << "): " << edge_list_text(graph_of("edges_distance", n)) << "\n";
    std::cout << "  G_S (rank " << split["rank_s"]
              << "): " << edge_list_text(graph_of("edges_sync", n)) << "\n";
  }
}

int cmd_analyze(const std::string& path, const CommonFlags& flags,
                bool assert_rigid) {
  Timer timer;
  AnalysisOutcome out = run_analysis(path, flags, false);
  out.report["timing_ms"] = timer.elapsed_ms();
  if (flags.json) {
    std::cout << out.report.dump(2) << "\n";
  } else {
    print_analysis_text(out.report, false);
  }
  if (assert_rigid && !out.rigid) return kExitAssertFailed;
  return kExitOk;
}

int cmd_decompose(const std::string& path, const CommonFlags& flags) {
  Timer timer;
  AnalysisOutcome out = run_analysis(path, flags, true);
  out.report["timing_ms"] = timer.elapsed_ms();
  if (flags.json) {
    std::cout << out.report.dump(2) << "\n";
  } else {
    print_analysis_text(out.report, true);
  }
  return kExitOk;
}

int cmd_estimate(const std::string& path, const CommonFlags& flags,
                 double perturb, int max_iter, double tol) {
  Timer timer;
  const std::string bytes = prr::read_file(path);
  const prr::Scenario scenario =
      prr::scenario_from_json(prr::parse_json(bytes, path));
  const Eigen::VectorXd y = prr::simulate_measurements(scenario, flags.seed);

  prr::EstimateOptions options;
  options.perturbation = perturb;
  options.max_iter = max_iter;
  options.tol = tol;
  options.seed = flags.seed;
  const prr::EstimationResult result = prr::estimate(scenario, y, options);

  prr::ordered_json report;
  report["input"] = path;
  report["digest"] = prr::content_digest(bytes);
  report["seed"] = flags.seed;
  report["perturbation"] = perturb;
  report["converged"] = result.converged;
  report["iterations"] = result.iterations;
  report["residual"] = result.residual_norm;
  report["jacobian_rank"] = result.jacobian_rank;
  report["unknowns"] = result.unknown_count;
  report["rank_deficient"] = result.rank_deficient;
  if (!result.diagnostic.empty()) report["diagnostic"] = result.diagnostic;
  report["receivers"] = prr::ordered_json::array();
  for (int r = 0; r < scenario.receiver_count(); ++r) {
    const Eigen::VectorXd est = result.receiver_positions.col(r);
    const double err = (est - scenario.receivers[r].position).norm();
    report["receivers"].push_back(
        {{"id", scenario.receivers[r].id},
         {"position", std::vector<double>(est.data(), est.data() + est.size())},
         {"bias", result.receiver_biases(r)},
         {"position_error", err}});
  }
  report["constellation_biases"] = std::vector<double>(
      result.constellation_biases.data(),
      result.constellation_biases.data() + result.constellation_biases.size());
  report["timing_ms"] = timer.elapsed_ms();

  if (flags.json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "input: " << path << "\n";
    std::cout << (result.converged ? "converged" : "did not converge")
              << " after " << result.iterations
              << " iterations, residual " << result.residual_norm << "\n";
    std::cout << "jacobian rank " << result.jacobian_rank << " / "
              << result.unknown_count
              << (result.rank_deficient ? " (rank deficient)" : "") << "\n";
    if (!result.diagnostic.empty()) {
      std::cout << "diagnostic: " << result.diagnostic << "\n";
    }
    for (const auto& r : report["receivers"]) {
      std::cout << "  " << r["id"].get<std::string>()
                << " position error: " << r["position_error"].get<double>()
                << "\n";
    }
  }
  if (!result.converged || result.rank_deficient) return kExitNotConverged;
  return kExitOk;
}

int cmd_generate(const prr::RandomScenarioParams& params, std::uint64_t seed,
                 const std::string& out_path) {
  const prr::Scenario scenario = prr::generate_random_scenario(params, seed);
  const std::string text = prr::scenario_to_json(scenario).dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    prr::write_text_file(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_formation(int dim, int agents_from, int agents_to, bool json_mode) {
  if (agents_to < agents_from) agents_to = agents_from;
  prr::ordered_json rows = prr::ordered_json::array();
  char ratio_text[32];
  if (!json_mode) {
    std::cout << "n | two-way (2 S_D) | pseudorange (S_P) | saving | "
                 "gnss min (R=n, C=1)\n";
  }
  for (int n = agents_from; n <= agents_to; ++n) {
    const prr::FormationSavings s = prr::formation_savings(n, dim);
    const int gnss_min = prr::min_measurements(n, 1, dim);
    std::snprintf(ratio_text, sizeof(ratio_text), "%.2f%%", 100.0 * s.ratio);
    if (json_mode) {
      rows.push_back({{"n", n},
                      {"two_way", s.two_way},
                      {"pseudorange", s.pseudorange},
                      {"saved", s.saved},
                      {"ratio", s.ratio},
                      {"gnss_min_measurements", gnss_min}});
    } else {
      std::cout << n << " | " << s.two_way << " | " << s.pseudorange << " | "
                << ratio_text << " (" << s.saved << " fewer) | " << gnss_min
                << "\n";
    }
  }
  if (json_mode) {
    prr::ordered_json report;
    report["dimension"] = dim;
    report["rows"] = rows;
    report["asymptotic_saving"] = {{"2d", 0.25}, {"3d", 1.0 / 3.0}};
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << "asymptotic saving: 25% (2D) / 33% (3D)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudorange rigidity and cooperative GNSS solvability"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* analyze = app.add_subcommand(
      "analyze", "rank and rigidity/solvability of a graph or scenario file");
  std::string analyze_path;
  bool assert_rigid = false;
  analyze->add_option("path", analyze_path, "graph or scenario JSON")->required();
  analyze->add_option("--dim", flags.dim, "space dimension for graph inputs");
  analyze->add_option("--trials", flags.trials, "random configurations per rank");
  analyze->add_option("--seed", flags.seed, "sampling seed");
  analyze->add_option("--tol", flags.tol, "relative rank tolerance");
  analyze->add_flag("--json", flags.json, "machine-readable report");
  analyze->add_flag("--assert-rigid", assert_rigid,
                    "exit 3 when the input is flexible/unsolvable");

  auto* decompose = app.add_subcommand(
      "decompose", "witness decomposition into distance-rigid + connected");
  std::string decompose_path;
  decompose->add_option("path", decompose_path, "graph or scenario JSON")->required();
  decompose->add_option("--dim", flags.dim, "space dimension for graph inputs");
  decompose->add_option("--trials", flags.trials, "random configurations per rank");
  decompose->add_option("--seed", flags.seed, "sampling seed");
  decompose->add_option("--tol", flags.tol, "relative rank tolerance");
  decompose->add_flag("--json", flags.json, "machine-readable report");

  auto* estimate = app.add_subcommand(
      "estimate", "simulate measurements and run the Newton estimator");
  std::string estimate_path;
  double perturb = 0.1;
  int max_iter = 50;
  double est_tol = 1e-10;
  estimate->add_option("path", estimate_path, "scenario JSON")->required();
  estimate->add_option("--perturb", perturb,
                       "initial-guess offset as a fraction of scene scale");
  estimate->add_option("--max-iter", max_iter, "iteration cap");
  estimate->add_option("--tol", est_tol, "residual norm tolerance");
  estimate->add_option("--seed", flags.seed, "noise/init seed");
  estimate->add_flag("--json", flags.json, "machine-readable report");

  auto* generate = app.add_subcommand("generate", "write a random scenario");
  prr::RandomScenarioParams params;
  std::string out_path;
  generate->add_option("--receivers", params.receivers, "receiver count");
  generate->add_option("--constellations", params.constellations,
                       "constellation count");
  generate->add_option("--satellites", params.satellites_per_constellation,
                       "satellites per constellation");
  generate->add_option("--dim", params.dimension, "space dimension");
  generate->add_option("--visibility", params.visibility,
                       "pseudoranges per receiver per constellation");
  generate->add_option("--distance-edges", params.inter_receiver_edges,
                       "inter-receiver distance measurements");
  generate->add_option("--seed", flags.seed, "generation seed");
  generate->add_option("--out", out_path, "output path ('-' for stdout)");

  auto* formation = app.add_subcommand(
      "formation", "measurement savings of one-way formation constraints");
  int formation_dim = 2;
  int agents_from = 0, agents_to = 0;
  formation->add_option("--dim", formation_dim, "space dimension");
  formation->add_option("--agents", agents_from, "first table row")->required();
  formation->add_option("--to", agents_to, "last table row (default: --agents)");
  formation->add_flag("--json", flags.json, "machine-readable table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(analyze_path, flags, assert_rigid);
    if (decompose->parsed()) return cmd_decompose(decompose_path, flags);
    if (estimate->parsed()) {
      return cmd_estimate(estimate_path, flags, perturb, max_iter, est_tol);
    }
    if (generate->parsed()) return cmd_generate(params, flags.seed, out_path);
    if (formation->parsed()) {
      return cmd_formation(formation_dim, agents_from, agents_to, flags.json);
    }
  } catch (const prr::InputError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
