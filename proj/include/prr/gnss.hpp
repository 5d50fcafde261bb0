#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prr/combinatorics.hpp"
#include "prr/configuration.hpp"
#include "prr/graph.hpp"
#include "prr/numeric.hpp"
#include "prr/rigidity.hpp"

namespace prr {

struct Satellite {
  std::string id;
  Eigen::VectorXd position;
};

/// Satellites of one constellation share a single clock bias.
struct Constellation {
  std::string id;
  double bias = 0.0;
  std::vector<Satellite> satellites;
};

struct Receiver {
  std::string id;
  Eigen::VectorXd position;  // ground truth, used for simulation
  double bias = 0.0;
};

/// Input document for cooperative positioning problems: constellations of
/// synchronized satellites, receivers, and the measurement topology.
struct Scenario {
  int dimension = 3;
  std::vector<Constellation> constellations;
  std::vector<Receiver> receivers;
  std::vector<std::pair<std::string, std::string>> pseudoranges;  // sat -> rec
  std::vector<std::pair<std::string, std::string>> distances;     // rec, rec
  double noise_sigma = 0.0;

  int satellite_count() const {
    int s = 0;
    for (const auto& c : constellations) s += static_cast<int>(c.satellites.size());
    return s;
  }
  int receiver_count() const { return static_cast<int>(receivers.size()); }
  int constellation_count() const { return static_cast<int>(constellations.size()); }
  int agent_count() const { return satellite_count() + receiver_count(); }
  int measurement_count() const {
    return static_cast<int>(pseudoranges.size() + distances.size());
  }
};

/// Agent indexing shared by every scenario-derived matrix: satellites first
/// (flattened in constellation order), then receivers.
struct ScenarioIndex {
  std::vector<std::string> labels;
  std::unordered_map<std::string, int> index;
  std::vector<int> constellation_of;  // per satellite agent
  int satellite_count = 0;

  bool is_satellite(int agent) const { return agent < satellite_count; }
};

inline ScenarioIndex index_scenario(const Scenario& s) {
  ScenarioIndex idx;
  auto add = [&idx](const std::string& id) {
    if (!idx.index.emplace(id, static_cast<int>(idx.labels.size())).second) {
      throw std::invalid_argument("scenario: duplicate agent id '" + id + "'");
    }
    idx.labels.push_back(id);
  };
  for (std::size_t c = 0; c < s.constellations.size(); ++c) {
    for (const Satellite& sat : s.constellations[c].satellites) {
      add(sat.id);
      idx.constellation_of.push_back(static_cast<int>(c));
    }
  }
  idx.satellite_count = static_cast<int>(idx.labels.size());
  for (const Receiver& r : s.receivers) add(r.id);
  return idx;
}

namespace detail {

inline int resolve_agent(const ScenarioIndex& idx, const std::string& id) {
  const auto it = idx.index.find(id);
  if (it == idx.index.end()) {
    throw std::invalid_argument("scenario: unknown agent id '" + id + "'");
  }
  return it->second;
}

}  // namespace detail

/// Ground-truth configuration of all agents in scenario index order.
inline Configuration<double> scenario_configuration(const Scenario& s) {
  const int n = s.agent_count();
  MatrixX<double> positions(s.dimension, n);
  VectorX<double> biases(n);
  int agent = 0;
  for (const Constellation& c : s.constellations) {
    for (const Satellite& sat : c.satellites) {
      if (sat.position.size() != s.dimension) {
        throw std::invalid_argument("satellite '" + sat.id +
                                    "' has wrong position dimension");
      }
      positions.col(agent) = sat.position;
      biases(agent) = c.bias;
      ++agent;
    }
  }
  for (const Receiver& r : s.receivers) {
    if (r.position.size() != s.dimension) {
      throw std::invalid_argument("receiver '" + r.id +
                                  "' has wrong position dimension");
    }
    positions.col(agent) = r.position;
    biases(agent) = r.bias;
    ++agent;
  }
  return Configuration<double>(std::move(positions), std::move(biases));
}

/// Constraint graph of a scenario. Pseudorange arcs point from satellites to
/// receivers; the distance graph joins the measured receiver pairs and every
/// satellite pair (satellite positions are known, hence their distances);
/// the synchronization graph is a spanning path per constellation.
inline GnssGraph build_gnss_graph(const Scenario& s,
                                  const ScenarioIndex* prebuilt = nullptr) {
  const ScenarioIndex idx = prebuilt != nullptr ? *prebuilt : index_scenario(s);
  const int n = s.agent_count();

  std::vector<Arc> arcs;
  arcs.reserve(s.pseudoranges.size());
  for (const auto& [sat_id, rec_id] : s.pseudoranges) {
    const int sat = detail::resolve_agent(idx, sat_id);
    const int rec = detail::resolve_agent(idx, rec_id);
    if (!idx.is_satellite(sat) || idx.is_satellite(rec)) {
      throw std::invalid_argument("pseudorange '" + sat_id + "' -> '" + rec_id +
                                  "' must run from a satellite to a receiver");
    }
    arcs.emplace_back(sat, rec);
  }

  std::vector<Edge> distance_edges;
  for (int u = 0; u < idx.satellite_count; ++u) {
    for (int v = u + 1; v < idx.satellite_count; ++v) {
      distance_edges.emplace_back(u, v);
    }
  }
  for (const auto& [a_id, b_id] : s.distances) {
    const int a = detail::resolve_agent(idx, a_id);
    const int b = detail::resolve_agent(idx, b_id);
    if (idx.is_satellite(a) || idx.is_satellite(b)) {
      throw std::invalid_argument("distance edge '" + a_id + "'-'" + b_id +
                                  "' must join two receivers");
    }
    distance_edges.emplace_back(a, b);
  }

  std::vector<Edge> sync_edges;
  int base = 0;
  for (const Constellation& c : s.constellations) {
    const int sz = static_cast<int>(c.satellites.size());
    for (int k = 0; k + 1 < sz; ++k) sync_edges.emplace_back(base + k, base + k + 1);
    base += sz;
  }

  return GnssGraph(DirectedPseudorangeGraph(n, std::move(arcs)),
                   SimpleGraph(n, std::move(distance_edges)),
                   SimpleGraph(n, std::move(sync_edges)));
}

/// Lower bound on the pseudorange/distance measurements needed to locate R
/// receivers using C constellations in R^d.
inline int min_measurements(int R, int C, int d) {
  if (R < 1 || C < 1) throw std::invalid_argument("min_measurements: R, C >= 1");
  return R * (d + 1) + C - 1;
}

struct SolvabilityReport {
  bool solvable = false;
  bool numeric_solvable = false;
  bool combinatorial_solvable = false;
  bool combinatorial_ran = false;
  bool verdicts_agree = true;
  int bound = 0;
  GenericRankResult numeric;
  DecompositionSearch decomposition;
  std::string warning;
};

/// Solvability = generic rigidity of the GNSS graph, decided along two
/// independent routes: numeric rank of the stacked rigidity matrix at random
/// configurations, and the matroid-union decomposition search.
inline SolvabilityReport is_solvable(const Scenario& s, std::uint64_t seed = 0,
                                     int trials = 5) {
  const GnssGraph graph = build_gnss_graph(s);
  const int n = s.agent_count();
  SolvabilityReport report;
  report.bound = s_p(n, s.dimension);
  report.numeric = generic_gnss_rank_numeric(graph, s.dimension, trials, seed);
  report.numeric_solvable = report.numeric.rank == report.bound;
  if (s.satellite_count() < s.dimension) {
    report.warning = "fewer satellites than space dimensions; rigidity may "
                     "not imply solvability, combinatorial check skipped";
    report.solvable = report.numeric_solvable;
    return report;
  }
  report.combinatorial_ran = true;
  report.decomposition = find_gnss_decomposition(graph, s.dimension, seed);
  report.combinatorial_solvable = report.decomposition.rigid;
  report.verdicts_agree =
      report.combinatorial_solvable == report.numeric_solvable;
  report.solvable = report.numeric_solvable;
  return report;
}

/// Measurement vector in canonical order: pseudoranges (file order), then
/// receiver distances (file order). Gaussian noise is added per entry when
/// the scenario carries a positive sigma.
inline Eigen::VectorXd simulate_measurements(const Scenario& s,
                                             std::uint64_t seed = 0) {
  const ScenarioIndex idx = index_scenario(s);
  const Configuration<double> truth = scenario_configuration(s);
  Eigen::VectorXd y(s.measurement_count());
  Eigen::Index row = 0;
  for (const auto& [sat_id, rec_id] : s.pseudoranges) {
    y(row++) = pseudorange(truth, detail::resolve_agent(idx, sat_id),
                           detail::resolve_agent(idx, rec_id));
  }
  for (const auto& [a_id, b_id] : s.distances) {
    y(row++) = detail::checked_distance(truth, detail::resolve_agent(idx, a_id),
                                        detail::resolve_agent(idx, b_id));
  }
  if (s.noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      y(i) += s.noise_sigma * gaussian_sample(rng);
    }
  }
  return y;
}

/// Split of the configuration into known parameters (satellite positions and
/// the reference constellation's bias) and estimated ones (receiver
/// positions, receiver biases, one bias offset per remaining constellation).
struct ParameterPartition {
  Eigen::VectorXd known;
  Eigen::VectorXd unknown;

  int unknown_count() const { return static_cast<int>(unknown.size()); }
};

inline ParameterPartition partition_parameters(const Scenario& s) {
  if (s.constellations.empty()) {
    throw std::invalid_argument("scenario has no constellations");
  }
  const int d = s.dimension;
  const int R = s.receiver_count();
  const int C = s.constellation_count();
  ParameterPartition part;
  part.known.resize(s.satellite_count() * d + 1);
  Eigen::Index k = 0;
  for (const Constellation& c : s.constellations) {
    for (const Satellite& sat : c.satellites) {
      part.known.segment(k, d) = sat.position;
      k += d;
    }
  }
  part.known(k) = s.constellations.front().bias;  // reference constellation

  part.unknown.resize(R * d + R + (C - 1));
  Eigen::Index u = 0;
  for (const Receiver& r : s.receivers) {
    part.unknown.segment(u, d) = r.position;
    u += d;
  }
  for (const Receiver& r : s.receivers) part.unknown(u++) = r.bias;
  for (int c = 1; c < C; ++c) part.unknown(u++) = s.constellations[c].bias;
  return part;
}

struct EstimateOptions {
  double perturbation = 0.1;  // initial-guess offset, fraction of scene scale
  int max_iter = 50;
  double tol = 1e-10;  // residual norm, scene units
  std::uint64_t seed = 0;
  std::optional<Eigen::VectorXd> initial_guess;  // overrides the perturbation
};

struct EstimationResult {
  Eigen::MatrixXd receiver_positions;    // d x R
  Eigen::VectorXd receiver_biases;       // R
  Eigen::VectorXd constellation_biases;  // C, first entry is the reference
  Eigen::VectorXd unknowns;              // final packed parameter vector
  int iterations = 0;
  double residual_norm = 0.0;
  bool converged = false;
  Eigen::Index jacobian_rank = 0;
  int unknown_count = 0;
  bool rank_deficient = false;
  std::string diagnostic;
};

/// Scene extent used to scale initial-guess perturbations: diameter of the
/// receiver network (the region the unknowns live in). A lone receiver falls
/// back to its nearest satellite range.
inline double scene_scale(const Scenario& s) {
  double diameter = 0.0;
  for (std::size_t a = 0; a < s.receivers.size(); ++a) {
    for (std::size_t b = a + 1; b < s.receivers.size(); ++b) {
      diameter = std::max(
          diameter, (s.receivers[a].position - s.receivers[b].position).norm());
    }
  }
  if (diameter > 0.0) return diameter;
  double nearest = 0.0;
  bool found = false;
  for (const Constellation& c : s.constellations) {
    for (const Satellite& sat : c.satellites) {
      for (const Receiver& r : s.receivers) {
        const double dist = (sat.position - r.position).norm();
        if (!found || dist < nearest) {
          nearest = dist;
          found = true;
        }
      }
    }
  }
  return found ? nearest : 0.0;
}

namespace detail {

// Measurement rows resolved to agent indices: pseudorange arcs then
// receiver distance pairs.
struct MeasurementLayout {
  std::vector<std::pair<int, int>> pseudoranges;  // satellite, receiver
  std::vector<std::pair<int, int>> distances;     // receiver, receiver
};

inline MeasurementLayout measurement_layout(const Scenario& s,
                                            const ScenarioIndex& idx) {
  MeasurementLayout layout;
  for (const auto& [a, b] : s.pseudoranges) {
    layout.pseudoranges.emplace_back(resolve_agent(idx, a),
                                     resolve_agent(idx, b));
  }
  for (const auto& [a, b] : s.distances) {
    layout.distances.emplace_back(resolve_agent(idx, a), resolve_agent(idx, b));
  }
  return layout;
}

}  // namespace detail

namespace detail {

// unknown layout: receiver coordinates, receiver biases, constellation bias
// offsets 2..C
inline void evaluate_measurement_model(const Scenario& s,
                                       const ScenarioIndex& idx,
                                       const MeasurementLayout& layout,
                                       const Eigen::VectorXd& p,
                                       Eigen::VectorXd* f,
                                       Eigen::MatrixXd* jac) {
  const int d = s.dimension;
  const int R = s.receiver_count();
  const int C = s.constellation_count();
  const int m = s.measurement_count();
  const int unknowns = R * d + R + (C - 1);
  if (p.size() != unknowns) {
    throw std::invalid_argument("measurement model: parameter vector has wrong "
                                "length");
  }
  const auto receiver_bias_index = [&](int r) { return R * d + r; };
  const auto offset_index = [&](int c) { return R * d + R + (c - 1); };
  if (f != nullptr) f->resize(m);
  if (jac != nullptr) *jac = Eigen::MatrixXd::Zero(m, unknowns);
  const Configuration<double> truth = scenario_configuration(s);

  Eigen::Index row = 0;
  for (const auto& [sat, rec] : layout.pseudoranges) {
    const int r = rec - idx.satellite_count;
    const int c = idx.constellation_of[sat];
    const Eigen::VectorXd diff = p.segment(r * d, d) - truth.positions.col(sat);
    const double dist = diff.norm();
    if (!(dist > 0.0)) {
      throw DegenerateGeometryError("estimate: receiver collapsed onto satellite");
    }
    const double sat_bias =
        c == 0 ? s.constellations.front().bias : p(offset_index(c));
    if (f != nullptr) (*f)(row) = dist + p(receiver_bias_index(r)) - sat_bias;
    if (jac != nullptr) {
      jac->row(row).segment(r * d, d) = diff.transpose() / dist;
      (*jac)(row, receiver_bias_index(r)) = 1.0;
      if (c != 0) (*jac)(row, offset_index(c)) = -1.0;
    }
    ++row;
  }
  for (const auto& [a, b] : layout.distances) {
    const int ra = a - idx.satellite_count;
    const int rb = b - idx.satellite_count;
    const Eigen::VectorXd diff = p.segment(ra * d, d) - p.segment(rb * d, d);
    const double dist = diff.norm();
    if (!(dist > 0.0)) {
      throw DegenerateGeometryError("estimate: receivers collapsed together");
    }
    if (f != nullptr) (*f)(row) = dist;
    if (jac != nullptr) {
      jac->row(row).segment(ra * d, d) = diff.transpose() / dist;
      jac->row(row).segment(rb * d, d) = -diff.transpose() / dist;
    }
    ++row;
  }
}

}  // namespace detail

/// Model measurements at the packed unknown vector (receiver coordinates,
/// receiver biases, constellation offsets 2..C).
inline Eigen::VectorXd measurement_function(const Scenario& s,
                                            const Eigen::VectorXd& p_u) {
  const ScenarioIndex idx = index_scenario(s);
  const auto layout = detail::measurement_layout(s, idx);
  Eigen::VectorXd f;
  detail::evaluate_measurement_model(s, idx, layout, p_u, &f, nullptr);
  return f;
}

inline Eigen::MatrixXd measurement_jacobian(const Scenario& s,
                                            const Eigen::VectorXd& p_u) {
  const ScenarioIndex idx = index_scenario(s);
  const auto layout = detail::measurement_layout(s, idx);
  Eigen::MatrixXd jac;
  detail::evaluate_measurement_model(s, idx, layout, p_u, nullptr, &jac);
  return jac;
}

/// Newton iteration on the unknown parameters: repeatedly applies the
/// pseudo-inverse of the measurement Jacobian to the residual until the
/// residual norm drops below tolerance.
inline EstimationResult estimate(const Scenario& s, const Eigen::VectorXd& y_m,
                                 const EstimateOptions& options = {}) {
  const ScenarioIndex idx = index_scenario(s);
  const auto layout = detail::measurement_layout(s, idx);
  const int d = s.dimension;
  const int R = s.receiver_count();
  const int C = s.constellation_count();
  const int m = s.measurement_count();
  if (y_m.size() != m) {
    throw std::invalid_argument("estimate: measurement vector has wrong length");
  }

  EstimationResult result;
  result.unknown_count = R * d + R + (C - 1);

  const auto receiver_position = [&](const Eigen::VectorXd& p, int r) {
    return p.segment(r * d, d);
  };
  const auto receiver_bias_index = [&](int r) { return R * d + r; };
  const auto offset_index = [&](int c) { return R * d + R + (c - 1); };

  const auto evaluate = [&](const Eigen::VectorXd& p, Eigen::VectorXd& f,
                            Eigen::MatrixXd& jac) {
    detail::evaluate_measurement_model(s, idx, layout, p, &f, &jac);
  };

  Eigen::VectorXd p;
  if (options.initial_guess.has_value()) {
    if (options.initial_guess->size() != result.unknown_count) {
      throw std::invalid_argument("estimate: initial guess has wrong length");
    }
    p = *options.initial_guess;
  } else {
    p = partition_parameters(s).unknown;
    if (options.perturbation != 0.0) {
      std::mt19937_64 rng(options.seed);
      const double delta = options.perturbation * scene_scale(s);
      for (Eigen::Index i = 0; i < p.size(); ++i) {
        p(i) += uniform_symmetric(rng, delta);
      }
    }
  }

  Eigen::VectorXd f;
  Eigen::MatrixXd jac;
  try {
    for (result.iterations = 0; result.iterations <= options.max_iter;
         ++result.iterations) {
      evaluate(p, f, jac);
      result.residual_norm = (f - y_m).norm();
      result.jacobian_rank = numeric_rank(jac);
      result.rank_deficient = result.jacobian_rank < result.unknown_count;
      if (result.residual_norm < options.tol) {
        result.converged = true;
        break;
      }
      if (result.iterations == options.max_iter) break;
      const Eigen::VectorXd step = least_squares_solve(jac, (f - y_m).eval());
      if (!step.allFinite()) {
        result.diagnostic = "non-finite Newton step";
        break;
      }
      p -= step;
    }
  } catch (const DegenerateGeometryError& err) {
    result.diagnostic = err.what();
    result.converged = false;
  }
  if (result.rank_deficient && result.diagnostic.empty()) {
    result.diagnostic = "measurement Jacobian is rank deficient (rank " +
                        std::to_string(result.jacobian_rank) + " of " +
                        std::to_string(result.unknown_count) +
                        "); solution is not locally unique";
  }

  result.unknowns = p;
  result.receiver_positions.resize(d, R);
  for (int r = 0; r < R; ++r) {
    result.receiver_positions.col(r) = receiver_position(p, r);
  }
  result.receiver_biases.resize(R);
  for (int r = 0; r < R; ++r) result.receiver_biases(r) = p(receiver_bias_index(r));
  result.constellation_biases.resize(C);
  result.constellation_biases(0) = s.constellations.front().bias;
  for (int c = 1; c < C; ++c) result.constellation_biases(c) = p(offset_index(c));
  return result;
}

struct RandomScenarioParams {
  int receivers = 1;
  int constellations = 1;
  int satellites_per_constellation = 4;
  int dimension = 3;
  int visibility = 4;  // pseudoranges per receiver per constellation
  int inter_receiver_edges = 0;
};

/// Seeded random scenario: satellites on a shell of radius 10, receivers in
/// the unit box, biases uniform in [-1, 1].
inline Scenario generate_random_scenario(const RandomScenarioParams& params,
                                         std::uint64_t seed = 0) {
  const int d = params.dimension;
  if (params.receivers < 0 || params.constellations < 0 ||
      params.satellites_per_constellation < 0 || d < 2) {
    throw std::invalid_argument("generate_random_scenario: bad counts");
  }
  if (params.visibility > params.satellites_per_constellation) {
    throw std::invalid_argument(
        "generate_random_scenario: visibility exceeds satellites per "
        "constellation");
  }
  const int max_pairs = params.receivers * (params.receivers - 1) / 2;
  if (params.inter_receiver_edges > max_pairs) {
    throw std::invalid_argument(
        "generate_random_scenario: more distance edges than receiver pairs");
  }

  std::mt19937_64 rng(seed);
  Scenario s;
  s.dimension = d;
  for (int c = 0; c < params.constellations; ++c) {
    Constellation con;
    con.id = "C" + std::to_string(c + 1);
    con.bias = uniform_symmetric(rng, 1.0);
    for (int k = 0; k < params.satellites_per_constellation; ++k) {
      Eigen::VectorXd dir(d);
      for (int i = 0; i < d; ++i) dir(i) = gaussian_sample(rng);
      if (dir.norm() == 0.0) dir(0) = 1.0;
      con.satellites.push_back(
          Satellite{con.id + "S" + std::to_string(k + 1), 10.0 * dir.normalized()});
    }
    s.constellations.push_back(std::move(con));
  }
  for (int r = 0; r < params.receivers; ++r) {
    Eigen::VectorXd pos(d);
    for (int i = 0; i < d; ++i) pos(i) = uniform_unit(rng);
    s.receivers.push_back(
        Receiver{"R" + std::to_string(r + 1), pos, uniform_symmetric(rng, 1.0)});
  }
  for (int r = 0; r < params.receivers; ++r) {
    for (int c = 0; c < params.constellations; ++c) {
      std::vector<int> pool(params.satellites_per_constellation);
      std::iota(pool.begin(), pool.end(), 0);
      for (int k = 0; k < params.visibility; ++k) {  // partial Fisher-Yates
        const int j = k + static_cast<int>(uniform_integer(
                              rng, 0, static_cast<int>(pool.size()) - 1 - k));
        std::swap(pool[k], pool[j]);
        s.pseudoranges.emplace_back(
            s.constellations[c].satellites[pool[k]].id, s.receivers[r].id);
      }
    }
  }
  if (params.inter_receiver_edges > 0) {
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < params.receivers; ++a)
      for (int b = a + 1; b < params.receivers; ++b) pairs.emplace_back(a, b);
    for (int k = 0; k < params.inter_receiver_edges; ++k) {
      const int j = k + static_cast<int>(uniform_integer(
                            rng, 0, static_cast<int>(pairs.size()) - 1 - k));
      std::swap(pairs[k], pairs[j]);
      s.distances.emplace_back(s.receivers[pairs[k].first].id,
                               s.receivers[pairs[k].second].id);
    }
  }
  return s;
}

struct FormationSavings {
  int two_way = 0;      // 2 S_D: both-direction ranging per maintained edge
  int pseudorange = 0;  // S_P: one-way constraints
  int saved = 0;
  double ratio = 0.0;
};

/// Measurement count comparison for maintaining an n-agent formation in R^d
/// with two-way ranging versus one-way pseudoranges.
inline FormationSavings formation_savings(int n, int d) {
  if (n < d + 1) {
    throw std::invalid_argument("formation_savings: requires n >= d + 1");
  }
  FormationSavings out;
  out.two_way = 2 * s_d(n, d);
  out.pseudorange = s_p(n, d);
  out.saved = out.two_way - out.pseudorange;
  out.ratio = static_cast<double>(out.saved) / static_cast<double>(out.two_way);
  return out;
}

/// Rigid one-way formation: the first d+1 agents exchange mutual
/// pseudoranges, every later agent only listens to the d+1 agents before it.
inline DirectedPseudorangeGraph formation_graph(int n, int d) {
  if (n < d + 1) {
    throw std::invalid_argument("formation_graph: requires n >= d + 1");
  }
  std::vector<Arc> arcs;
  for (VertexId u = 0; u <= d; ++u) {
    for (VertexId v = 0; v <= d; ++v) {
      if (u != v) arcs.emplace_back(u, v);
    }
  }
  for (VertexId k = d + 1; k < n; ++k) {
    for (VertexId j = k - d - 1; j < k; ++j) arcs.emplace_back(j, k);
  }
  return DirectedPseudorangeGraph(n, std::move(arcs));
}

}  // namespace prr
