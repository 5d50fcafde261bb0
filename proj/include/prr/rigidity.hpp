#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "prr/configuration.hpp"
#include "prr/graph.hpp"
#include "prr/numeric.hpp"

namespace prr {

/// Raised when a constrained pair of agents sits at the same position; the
/// distance scaling D of the constraint Jacobian is singular there.
struct DegenerateGeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename Scalar = double>
struct PseudorangeFramework {
  DirectedPseudorangeGraph graph;
  Configuration<Scalar> config;
};

namespace detail {

template <typename Scalar>
Scalar checked_distance(const Configuration<Scalar>& config, VertexId u,
                        VertexId v) {
  const Scalar dist = config.distance(u, v);
  if (!(dist > Scalar(0))) {
    throw DegenerateGeometryError("coincident constrained pair " +
                                  std::to_string(u) + "," + std::to_string(v));
  }
  return dist;
}

}  // namespace detail

/// Apparent distance from u to v: true range plus the clock-bias difference.
template <typename Scalar>
Scalar pseudorange(const Configuration<Scalar>& config, VertexId u, VertexId v) {
  const Scalar dist = detail::checked_distance(config, u, v);
  return dist + config.biases(v) - config.biases(u);
}

/// Per-arc pseudorange values in canonical arc order.
template <typename Scalar>
VectorX<Scalar> evaluate_constraints(const DirectedPseudorangeGraph& graph,
                                     const Configuration<Scalar>& config) {
  VectorX<Scalar> values(graph.arc_count());
  Eigen::Index row = 0;
  for (const Arc& a : graph.arcs()) {
    values(row++) = pseudorange(config, a.tail, a.head);
  }
  return values;
}

template <typename Scalar>
VectorX<Scalar> evaluate_constraints(const PseudorangeFramework<Scalar>& fw) {
  return evaluate_constraints(fw.graph, fw.config);
}

template <typename Scalar = double>
struct SymmetricPairResolution {
  Scalar distance;
  Scalar bias_difference;  // beta_u - beta_v
};

/// Recover distance and bias difference from the two opposite pseudoranges
/// rho_uv and rho_vu.
template <typename Scalar>
SymmetricPairResolution<Scalar> symmetric_pair_resolve(Scalar rho_uv,
                                                       Scalar rho_vu) {
  const Scalar dist = (rho_uv + rho_vu) / Scalar(2);
  if (!(dist > Scalar(0))) {
    throw DegenerateGeometryError(
        "symmetric pseudorange pair implies nonpositive distance");
  }
  return {dist, (rho_vu - rho_uv) / Scalar(2)};
}

namespace detail {

// Distance rows for an ordered list of (u, v) pairs: (x_u - x_v)^T at u's
// position columns, the negative at v's.
template <typename Scalar>
MatrixX<Scalar> distance_rows(const std::vector<std::pair<VertexId, VertexId>>& pairs,
                              const Configuration<Scalar>& config) {
  const int d = config.dimension();
  const int n = config.agent_count();
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(pairs.size(), n * d);
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    const auto [u, v] = pairs[row];
    checked_distance(config, u, v);
    const auto diff = (config.positions.col(u) - config.positions.col(v)).eval();
    m.row(row).segment(u * d, d) = diff.transpose();
    m.row(row).segment(v * d, d) = -diff.transpose();
  }
  return m;
}

// Clock rows: the oriented incidence column of each pair scaled by the
// distance between its endpoints (-dist at tail, +dist at head).
template <typename Scalar>
MatrixX<Scalar> sync_rows(const std::vector<std::pair<VertexId, VertexId>>& pairs,
                          const Configuration<Scalar>& config) {
  const int n = config.agent_count();
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(pairs.size(), n);
  for (std::size_t row = 0; row < pairs.size(); ++row) {
    const auto [tail, head] = pairs[row];
    const Scalar dist = checked_distance(config, tail, head);
    m(row, tail) = -dist;
    m(row, head) = dist;
  }
  return m;
}

inline std::vector<std::pair<VertexId, VertexId>> arc_pairs(
    const DirectedPseudorangeGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(g.arcs().size());
  for (const Arc& a : g.arcs()) pairs.emplace_back(a.tail, a.head);
  return pairs;
}

// Lexicographic orientation: smaller id is the tail.
inline std::vector<std::pair<VertexId, VertexId>> edge_pairs(
    const SimpleGraph& g) {
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(g.edges().size());
  for (const Edge& e : g.edges()) pairs.emplace_back(e.u, e.v);
  return pairs;
}

}  // namespace detail

/// Oriented incidence matrix (n x |E|): +1 at head, -1 at tail per column.
template <typename Scalar = double>
MatrixX<Scalar> incidence_matrix(const SimpleGraph& g) {
  MatrixX<Scalar> b = MatrixX<Scalar>::Zero(g.vertex_count(), g.edge_count());
  Eigen::Index col = 0;
  for (const Edge& e : g.edges()) {
    b(e.u, col) = Scalar(-1);  // lexicographic: smaller id is the tail
    b(e.v, col) = Scalar(1);
    ++col;
  }
  return b;
}

template <typename Scalar = double>
MatrixX<Scalar> incidence_matrix(const DirectedPseudorangeGraph& g) {
  MatrixX<Scalar> b = MatrixX<Scalar>::Zero(g.vertex_count(), g.arc_count());
  Eigen::Index col = 0;
  for (const Arc& a : g.arcs()) {
    b(a.tail, col) = Scalar(-1);
    b(a.head, col) = Scalar(1);
    ++col;
  }
  return b;
}

/// Distance rigidity matrix (rows in edge order, |E| x nd).
template <typename Scalar>
MatrixX<Scalar> distance_rigidity_matrix(const SimpleGraph& g,
                                         const Configuration<Scalar>& config) {
  return detail::distance_rows(detail::edge_pairs(g), config);
}

/// Distance block of the pseudorange rigidity matrix: one row per arc, the
/// graph viewed as an undirected multigraph.
template <typename Scalar>
MatrixX<Scalar> distance_rigidity_matrix(const DirectedPseudorangeGraph& g,
                                         const Configuration<Scalar>& config) {
  return detail::distance_rows(detail::arc_pairs(g), config);
}

/// Clock-synchronization block: distance-scaled transposed incidence matrix.
template <typename Scalar>
MatrixX<Scalar> sync_matrix(const DirectedPseudorangeGraph& g,
                            const Configuration<Scalar>& config) {
  return detail::sync_rows(detail::arc_pairs(g), config);
}

template <typename Scalar>
MatrixX<Scalar> sync_matrix(const SimpleGraph& g,
                            const Configuration<Scalar>& config) {
  return detail::sync_rows(detail::edge_pairs(g), config);
}

/// Pseudorange rigidity matrix [R_D | R_S] (|E| x n(d+1)), the constraint
/// Jacobian premultiplied by the diagonal of arc distances.
template <typename Scalar>
MatrixX<Scalar> pseudorange_rigidity_matrix(const DirectedPseudorangeGraph& g,
                                            const Configuration<Scalar>& config) {
  const int d = config.dimension();
  const int n = config.agent_count();
  MatrixX<Scalar> m(g.arc_count(), n * (d + 1));
  m.leftCols(n * d) = distance_rigidity_matrix(g, config);
  m.rightCols(n) = sync_matrix(g, config);
  return m;
}

template <typename Scalar>
MatrixX<Scalar> pseudorange_rigidity_matrix(const PseudorangeFramework<Scalar>& fw) {
  return pseudorange_rigidity_matrix(fw.graph, fw.config);
}

/// Rank bound of a distance rigidity matrix on n agents in R^d.
inline int s_d(int n, int d) {
  if (n < 1) throw std::invalid_argument("s_d: n must be >= 1");
  if (d < 2) throw std::invalid_argument("s_d: d must be >= 2");
  if (n >= d + 1) return n * d - (d + 1) * d / 2;
  return n * (n - 1) / 2;
}

/// Rank bound of a pseudorange rigidity matrix: s_d plus n - 1 for the
/// clock block.
inline int s_p(int n, int d) { return s_d(n, d) + n - 1; }

struct RigidityReport {
  Eigen::Index rank = 0;
  int bound = 0;
  bool rigid = false;
  int flex_dofs = 0;
  std::vector<std::uint64_t> seeds;  // sampling seeds, when any were used
};

/// Rank test at the given configuration: rigid iff the rigidity matrix
/// attains the bound S_P(n, d).
template <typename Scalar>
RigidityReport is_infinitesimally_rigid(const DirectedPseudorangeGraph& graph,
                                        const Configuration<Scalar>& config,
                                        TolerancePolicy tol = {}) {
  RigidityReport report;
  report.rank = numeric_rank(pseudorange_rigidity_matrix(graph, config), tol);
  report.bound = s_p(config.agent_count(), config.dimension());
  report.rigid = report.rank == report.bound;
  report.flex_dofs = report.bound - static_cast<int>(report.rank);
  return report;
}

template <typename Scalar>
RigidityReport is_infinitesimally_rigid(const PseudorangeFramework<Scalar>& fw,
                                        TolerancePolicy tol = {}) {
  return is_infinitesimally_rigid(fw.graph, fw.config, tol);
}

/// Stacked GNSS rigidity matrix: pseudorange rows [R_D | R_S], known-distance
/// rows [R_D | 0], synchronization rows [0 | R_S].
template <typename Scalar>
MatrixX<Scalar> gnss_rigidity_matrix(const GnssGraph& gg,
                                     const Configuration<Scalar>& config) {
  const int d = config.dimension();
  const int n = config.agent_count();
  const int m_p = gg.gamma.arc_count();
  const int m_d = gg.g_d.edge_count();
  const int m_s = gg.g_s.edge_count();
  MatrixX<Scalar> m = MatrixX<Scalar>::Zero(m_p + m_d + m_s, n * (d + 1));
  if (m_p > 0) {
    m.topRows(m_p) = pseudorange_rigidity_matrix(gg.gamma, config);
  }
  if (m_d > 0) {
    m.block(m_p, 0, m_d, n * d) = distance_rigidity_matrix(gg.g_d, config);
  }
  if (m_s > 0) {
    m.block(m_p + m_d, n * d, m_s, n) = sync_matrix(gg.g_s, config);
  }
  return m;
}

struct GenericRankResult {
  Eigen::Index rank = 0;
  bool trials_agree = true;  // false hints at a non-generic sample
  std::vector<std::uint64_t> seeds;
};

namespace detail {

template <typename MatrixBuilder>
GenericRankResult generic_rank_impl(int n, int d, int trials,
                                    std::uint64_t seed,
                                    const SampleOptions& sample,
                                    TolerancePolicy tol,
                                    MatrixBuilder&& build) {
  if (trials < 1) throw std::invalid_argument("generic rank: trials must be >= 1");
  GenericRankResult result;
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = mix_seed(seed, static_cast<std::uint64_t>(t));
    result.seeds.push_back(trial_seed);
    const auto config = sample_configuration<double>(n, d, trial_seed, sample);
    const Eigen::Index r = numeric_rank(build(config), tol);
    if (t > 0 && r != result.rank) result.trials_agree = false;
    result.rank = std::max(result.rank, r);
  }
  return result;
}

}  // namespace detail

/// Maximum rigidity-matrix rank over randomly sampled configurations; for
/// almost every sample this is the generic rank of the graph.
inline GenericRankResult generic_rank_numeric(
    const DirectedPseudorangeGraph& graph, int d, int trials = 5,
    std::uint64_t seed = 0, const SampleOptions& sample = {},
    TolerancePolicy tol = {}) {
  return detail::generic_rank_impl(
      graph.vertex_count(), d, trials, seed, sample, tol,
      [&graph](const Configuration<double>& config) {
        return pseudorange_rigidity_matrix(graph, config);
      });
}

/// Same sampling scheme over the stacked GNSS rigidity matrix.
inline GenericRankResult generic_gnss_rank_numeric(
    const GnssGraph& gg, int d, int trials = 5, std::uint64_t seed = 0,
    const SampleOptions& sample = {}, TolerancePolicy tol = {}) {
  return detail::generic_rank_impl(
      gg.vertex_count(), d, trials, seed, sample, tol,
      [&gg](const Configuration<double>& config) {
        return gnss_rigidity_matrix(gg, config);
      });
}

/// Comma-separated dump, one constraint row per line; debugging aid.
template <typename Derived>
std::string to_csv(const Eigen::MatrixBase<Derived>& m) {
  static const Eigen::IOFormat csv(Eigen::FullPrecision, Eigen::DontAlignCols,
                                   ",", "\n");
  std::ostringstream out;
  out << m.format(csv);
  return out.str();
}

/// Basis of the motions admissible for every framework: d translations,
/// d(d-1)/2 rotations, and the global bias shift, as columns of length
/// n(d+1).
template <typename Scalar>
MatrixX<Scalar> trivial_motion_basis(const Configuration<Scalar>& config) {
  const int d = config.dimension();
  const int n = config.agent_count();
  const int count = d + d * (d - 1) / 2 + 1;
  MatrixX<Scalar> basis = MatrixX<Scalar>::Zero(n * (d + 1), count);
  int col = 0;
  for (int k = 0; k < d; ++k, ++col) {  // translations
    for (int i = 0; i < n; ++i) basis(i * d + k, col) = Scalar(1);
  }
  for (int a = 0; a < d; ++a) {  // rotations: v_i = A x_i, A antisymmetric
    for (int b = a + 1; b < d; ++b, ++col) {
      for (int i = 0; i < n; ++i) {
        basis(i * d + a, col) = config.positions(b, i);
        basis(i * d + b, col) = -config.positions(a, i);
      }
    }
  }
  basis.col(col).tail(n).setOnes();  // bias shift
  return basis;
}

}  // namespace prr
