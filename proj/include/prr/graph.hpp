#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace prr {

using VertexId = std::int32_t;

/// One-way pseudorange constraint, measured from tail to head.
struct Arc {
  VertexId tail = 0;
  VertexId head = 0;

  Arc() = default;
  Arc(VertexId t, VertexId h) : tail(t), head(h) {}

  Arc reversed() const { return Arc(head, tail); }

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Unordered vertex pair, normalized so that u < v.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge() = default;
  Edge(VertexId a, VertexId b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

inline void check_vertex(VertexId id, int n, const char* what) {
  if (id < 0 || id >= n) {
    throw std::invalid_argument(std::string(what) + ": vertex id " +
                                std::to_string(id) + " out of range [0, " +
                                std::to_string(n) + ")");
  }
}

}  // namespace detail

/// Simple directed graph of pseudorange measurements. The arc sequence is
/// fixed at construction and defines the canonical row order of every
/// matrix assembled from the graph.
class DirectedPseudorangeGraph {
 public:
  DirectedPseudorangeGraph() = default;

  DirectedPseudorangeGraph(int n, std::vector<Arc> arcs)
      : n_(n), arcs_(std::move(arcs)) {
    if (n_ < 0) throw std::invalid_argument("vertex count must be >= 0");
    std::set<std::pair<VertexId, VertexId>> seen;
    for (const Arc& a : arcs_) {
      detail::check_vertex(a.tail, n_, "arc tail");
      detail::check_vertex(a.head, n_, "arc head");
      if (a.tail == a.head) {
        throw std::invalid_argument("self-loop arc at vertex " +
                                    std::to_string(a.tail));
      }
      if (!seen.emplace(a.tail, a.head).second) {
        throw std::invalid_argument("duplicate arc " + std::to_string(a.tail) +
                                    "->" + std::to_string(a.head));
      }
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }

  /// Same graph with every arc flipped.
  DirectedPseudorangeGraph reversed() const {
    std::vector<Arc> rev;
    rev.reserve(arcs_.size());
    for (const Arc& a : arcs_) rev.push_back(a.reversed());
    return DirectedPseudorangeGraph(n_, std::move(rev));
  }

  /// All n(n-1) ordered pairs.
  static DirectedPseudorangeGraph complete_symmetric(int n) {
    std::vector<Arc> arcs;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = 0; v < n; ++v)
        if (u != v) arcs.emplace_back(u, v);
    return DirectedPseudorangeGraph(n, std::move(arcs));
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

/// Undirected simple graph. Edge order is preserved from construction and
/// defines incidence-matrix column order.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int n) : n_(n) {
    if (n_ < 0) throw std::invalid_argument("vertex count must be >= 0");
  }

  SimpleGraph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ < 0) throw std::invalid_argument("vertex count must be >= 0");
    std::set<Edge> seen;
    for (const Edge& e : edges_) {
      detail::check_vertex(e.u, n_, "edge endpoint");
      detail::check_vertex(e.v, n_, "edge endpoint");
      if (e.u == e.v) {
        throw std::invalid_argument("self-loop edge at vertex " +
                                    std::to_string(e.u));
      }
      if (!seen.insert(e).second) {
        throw std::invalid_argument("duplicate edge {" + std::to_string(e.u) +
                                    "," + std::to_string(e.v) + "}");
      }
    }
  }

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  bool contains(Edge e) const {
    return std::find(edges_.begin(), edges_.end(), e) != edges_.end();
  }

  static SimpleGraph complete(int n) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return SimpleGraph(n, std::move(edges));
  }

  static SimpleGraph path(int n) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
    return SimpleGraph(n, std::move(edges));
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Undirected multigraph induced by a directed graph: an unordered pair
/// carries multiplicity 2 when both opposite arcs exist, 1 when only one does.
struct UndirectedMultigraph {
  int n = 0;
  std::vector<Edge> single_edges;  // multiplicity 1, sorted
  std::vector<Edge> double_edges;  // multiplicity 2, sorted

  int element_count() const {
    return static_cast<int>(single_edges.size() + 2 * double_edges.size());
  }
};

/// Splitting of a multigraph's edges into two simple graphs; double edges
/// belong to both sides.
struct Decomposition {
  SimpleGraph g_d;
  SimpleGraph g_s;
};

/// Pseudorange arcs plus known-distance edges plus clock-synchronization
/// edges, all on one shared vertex set.
struct GnssGraph {
  DirectedPseudorangeGraph gamma;
  SimpleGraph g_d;
  SimpleGraph g_s;

  GnssGraph() = default;
  GnssGraph(DirectedPseudorangeGraph pseudoranges, SimpleGraph distances,
            SimpleGraph synchronizations)
      : gamma(std::move(pseudoranges)),
        g_d(std::move(distances)),
        g_s(std::move(synchronizations)) {
    if (g_d.vertex_count() != gamma.vertex_count() ||
        g_s.vertex_count() != gamma.vertex_count()) {
      throw std::invalid_argument("GNSS graph parts disagree on vertex count");
    }
  }

  int vertex_count() const { return gamma.vertex_count(); }
};

inline UndirectedMultigraph underlying_multigraph(
    const DirectedPseudorangeGraph& gamma) {
  std::map<Edge, int> multiplicity;
  for (const Arc& a : gamma.arcs()) multiplicity[Edge(a.tail, a.head)] += 1;
  UndirectedMultigraph m;
  m.n = gamma.vertex_count();
  for (const auto& [edge, count] : multiplicity) {
    if (count == 1) {
      m.single_edges.push_back(edge);
    } else {
      m.double_edges.push_back(edge);  // count == 2: at most one arc per
                                       // ordered pair in a simple digraph
    }
  }
  return m;
}

/// Vertex partition into connected components. Labels are dense, assigned in
/// order of smallest contained vertex id.
struct ComponentPartition {
  std::vector<int> labels;
  int count = 0;
};

inline ComponentPartition connected_components(int n,
                                               const std::vector<Edge>& edges) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const Edge& e : edges) {
    int ru = find(e.u), rv = find(e.v);
    if (ru != rv) parent[std::max(ru, rv)] = std::min(ru, rv);
  }
  ComponentPartition part;
  part.labels.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (part.labels[root] < 0) part.labels[root] = part.count++;
    part.labels[i] = part.labels[root];
  }
  return part;
}

inline ComponentPartition connected_components(const SimpleGraph& g) {
  return connected_components(g.vertex_count(), g.edges());
}

/// True when E_D and E_S restore the multigraph: union covers every edge,
/// intersection is exactly the double edges.
inline bool validate_decomposition(const UndirectedMultigraph& m,
                                   const Decomposition& d) {
  if (d.g_d.vertex_count() != m.n || d.g_s.vertex_count() != m.n) return false;
  std::set<Edge> e_d(d.g_d.edges().begin(), d.g_d.edges().end());
  std::set<Edge> e_s(d.g_s.edges().begin(), d.g_s.edges().end());
  std::set<Edge> expected_union(m.single_edges.begin(), m.single_edges.end());
  expected_union.insert(m.double_edges.begin(), m.double_edges.end());
  std::set<Edge> expected_both(m.double_edges.begin(), m.double_edges.end());

  std::set<Edge> got_union = e_d;
  got_union.insert(e_s.begin(), e_s.end());
  std::set<Edge> got_both;
  std::set_intersection(e_d.begin(), e_d.end(), e_s.begin(), e_s.end(),
                        std::inserter(got_both, got_both.begin()));
  return got_union == expected_union && got_both == expected_both;
}

/// Raised when exhaustive enumeration would exceed the configured cap.
struct DecompositionLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// All 2^|E1| decompositions of the multigraph. Exhaustive; intended as a
/// cross-check oracle. Above `single_edge_limit` use matroid_union_rank.
inline std::vector<Decomposition> enumerate_decompositions(
    const UndirectedMultigraph& m, int single_edge_limit = 20) {
  const int k = static_cast<int>(m.single_edges.size());
  if (k > single_edge_limit) {
    throw DecompositionLimitError(
        "enumerate_decompositions: " + std::to_string(k) +
        " single edges exceed limit " + std::to_string(single_edge_limit) +
        "; use matroid_union_rank for large graphs");
  }
  std::vector<Decomposition> out;
  out.reserve(std::size_t(1) << k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    std::vector<Edge> e_d(m.double_edges);
    std::vector<Edge> e_s(m.double_edges);
    for (int i = 0; i < k; ++i) {
      if (mask & (std::uint64_t(1) << i)) {
        e_s.push_back(m.single_edges[i]);
      } else {
        e_d.push_back(m.single_edges[i]);
      }
    }
    out.push_back(Decomposition{SimpleGraph(m.n, std::move(e_d)),
                                SimpleGraph(m.n, std::move(e_s))});
  }
  return out;
}

}  // namespace prr
