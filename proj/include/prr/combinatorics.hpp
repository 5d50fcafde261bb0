#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "prr/graph.hpp"
#include "prr/numeric.hpp"
#include "prr/rigidity.hpp"

namespace prr {

/// Raised when a rank oracle contradicts itself during the union algorithm
/// (e.g. an exchange certified independent turns out dependent).
struct OracleInconsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- cycle (graphic) matroid ------------------------------------------------

/// Rank of an edge multiset in the cycle matroid: covered vertices minus
/// components, i.e. the size of a maximal forest.
inline int graphic_rank(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  int rank = 0;
  for (const Edge& e : edges) {
    const int ru = find(e.u), rv = find(e.v);
    if (ru != rv) {
      parent[ru] = rv;
      ++rank;
    }
  }
  return rank;
}

inline int graphic_rank(const SimpleGraph& g) {
  return graphic_rank(g.vertex_count(), g.edges());
}

// --- (2,3)-pebble game ------------------------------------------------------

/// Generic 2D distance-rigidity matroid via the (2,3)-pebble game. Inserting
/// an edge requires gathering four pebbles on its endpoints; accepted edges
/// are exactly the independent ones.
class PebbleGame2d {
 public:
  explicit PebbleGame2d(int n) : pebbles_(n, 2), out_(n) {}

  bool try_insert(Edge e) {
    const int u = e.u, v = e.v;
    if (u == v) return false;
    while (pebbles_[u] + pebbles_[v] < 4) {
      if (!acquire(u, u, v) && !acquire(v, u, v)) return false;
    }
    // both endpoints hold two pebbles here; orient away from u
    pebbles_[u] -= 1;
    out_[u].insert(v);
    ++rank_;
    return true;
  }

  int rank() const { return rank_; }

 private:
  // Pull one free pebble onto `root` along directed edges, reversing the
  // path. Pebbles parked on hold1/hold2 are already counted and stay put.
  bool acquire(int root, int hold1, int hold2) {
    const int n = static_cast<int>(pebbles_.size());
    std::vector<int> parent(n, -2);
    std::vector<int> stack{root};
    parent[root] = -1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (x != root && x != hold1 && x != hold2 && pebbles_[x] > 0) {
        pebbles_[x] -= 1;
        pebbles_[root] += 1;
        for (int cur = x; parent[cur] != -1;) {  // reverse the search path
          const int prev = parent[cur];
          out_[prev].erase(cur);
          out_[cur].insert(prev);
          cur = prev;
        }
        return true;
      }
      // smallest-id preference: set iteration is ascending, so push in
      // reverse to pop ascending
      for (auto it = out_[x].rbegin(); it != out_[x].rend(); ++it) {
        if (parent[*it] == -2) {
          parent[*it] = x;
          stack.push_back(*it);
        }
      }
    }
    return false;
  }

  std::vector<int> pebbles_;
  std::vector<std::set<int>> out_;
  int rank_ = 0;
};

inline int laman_rank_2d(int n, const std::vector<Edge>& edges) {
  PebbleGame2d game(n);
  for (const Edge& e : edges) game.try_insert(e);
  return game.rank();
}

inline int laman_rank_2d(const SimpleGraph& g) {
  return laman_rank_2d(g.vertex_count(), g.edges());
}

// --- randomized distance-rank oracle ---------------------------------------

/// Distance-rank queries answered numerically at a handful of random
/// large-integer configurations, taking the maximum. A query never
/// overestimates the generic rank; repetition bounds the underestimate
/// probability.
class RandomizedDistanceOracle {
 public:
  RandomizedDistanceOracle(int n, int d, int trials, std::uint64_t seed,
                           std::int64_t coordinate_range = std::int64_t(1) << 20)
      : n_(n), d_(d) {
    SampleOptions opt;
    opt.mode = SampleMode::kInteger;
    opt.integer_range = coordinate_range;
    rows_.reserve(trials);
    for (int t = 0; t < trials; ++t) {
      const auto config =
          sample_configuration<double>(n, d, mix_seed(seed, t), opt);
      MatrixX<double> rows = MatrixX<double>::Zero(n * (n - 1) / 2, n * d);
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          const auto diff =
              (config.positions.col(u) - config.positions.col(v)).eval();
          const Eigen::Index row = pair_index(u, v);
          rows.row(row).segment(u * d, d) = diff.transpose();
          rows.row(row).segment(v * d, d) = -diff.transpose();
        }
      }
      rows_.push_back(std::move(rows));
    }
  }

  int rank(const std::vector<Edge>& subset) const {
    std::set<Edge> distinct(subset.begin(), subset.end());
    if (distinct.empty()) return 0;
    const int cap = static_cast<int>(distinct.size());
    int best = 0;
    MatrixX<double> sub(cap, n_ * d_);
    for (const auto& rows : rows_) {
      Eigen::Index r = 0;
      for (const Edge& e : distinct) sub.row(r++) = rows.row(pair_index(e.u, e.v));
      best = std::max(best, static_cast<int>(Eigen::FullPivLU<MatrixX<double>>(sub).rank()));
      if (best == cap) break;  // rank can never exceed the subset size
    }
    return best;
  }

 private:
  Eigen::Index pair_index(int u, int v) const {
    return static_cast<Eigen::Index>(u) * n_ - u * (u + 1) / 2 + (v - u - 1);
  }

  int n_;
  int d_;
  std::vector<MatrixX<double>> rows_;
};

/// Standalone randomized rank of a simple graph's distance rigidity matrix:
/// maximum numeric rank over freshly sampled configurations.
inline int randomized_distance_rank(const SimpleGraph& g, int d, int trials = 5,
                                    std::uint64_t seed = 0,
                                    const SampleOptions& sample = {},
                                    TolerancePolicy tol = {}) {
  Eigen::Index best = 0;
  for (int t = 0; t < trials; ++t) {
    const auto config = sample_configuration<double>(
        g.vertex_count(), d, mix_seed(seed, t), sample);
    best = std::max(best, numeric_rank(distance_rigidity_matrix(g, config), tol));
  }
  return static_cast<int>(best);
}

// --- matroid union ----------------------------------------------------------

/// Pure rank function over edge multisets.
using EdgeRankFn = std::function<int(const std::vector<Edge>&)>;

/// Distance-rigidity rank oracle for one dimension: exact pebble game in 2D,
/// randomized evaluation in higher dimensions.
struct DistanceRankOracle {
  int dimension = 2;
  EdgeRankFn rank;
};

inline DistanceRankOracle make_distance_rank_oracle(
    int n, int d, std::uint64_t seed = 0, int trials = 5,
    std::int64_t coordinate_range = std::int64_t(1) << 20) {
  DistanceRankOracle oracle;
  oracle.dimension = d;
  if (d == 2) {
    oracle.rank = [n](const std::vector<Edge>& edges) {
      return laman_rank_2d(n, edges);
    };
  } else {
    auto impl = std::make_shared<RandomizedDistanceOracle>(n, d, trials, seed,
                                                           coordinate_range);
    oracle.rank = [impl](const std::vector<Edge>& edges) {
      return impl->rank(edges);
    };
  }
  return oracle;
}

struct MatroidUnionResult {
  int rank = 0;
  std::vector<int> side;  // per element: 0 unassigned, 1 first, 2 second
};

/// Rank of the union of two matroids given by rank oracles over a common
/// element list. Augmenting-path algorithm: each element either enters one
/// side directly or displaces a fundamental-circuit member to the other
/// side along a shortest exchange path.
inline MatroidUnionResult matroid_union(const std::vector<Edge>& elements,
                                        const EdgeRankFn& rank_a,
                                        const EdgeRankFn& rank_b) {
  const int m = static_cast<int>(elements.size());
  MatroidUnionResult result;
  result.side.assign(m, 0);

  auto members_of = [&](int s) {
    std::vector<int> ids;
    for (int i = 0; i < m; ++i)
      if (result.side[i] == s) ids.push_back(i);
    return ids;
  };
  auto rank_of = [&](int s, const std::vector<int>& ids, int skip, int extra) {
    std::vector<Edge> probe;
    probe.reserve(ids.size() + 1);
    for (int id : ids)
      if (id != skip) probe.push_back(elements[id]);
    if (extra >= 0) probe.push_back(elements[extra]);
    return (s == 1 ? rank_a : rank_b)(probe);
  };

  auto try_augment = [&](int e) {
    std::vector<std::array<int, 2>> parent_el(m, {-2, -2});
    std::vector<std::array<int, 2>> parent_tgt(m, {0, 0});
    std::deque<std::array<int, 2>> queue;
    auto push = [&](int el, int tgt, int pel, int ptgt) {
      if (parent_el[el][tgt - 1] != -2) return;
      parent_el[el][tgt - 1] = pel;
      parent_tgt[el][tgt - 1] = ptgt;
      queue.push_back({el, tgt});
    };
    push(e, 1, -1, 0);
    push(e, 2, -1, 0);
    while (!queue.empty()) {
      const auto [x, t] = queue.front();
      queue.pop_front();
      const auto members = members_of(t);
      const int r = rank_of(t, members, -1, x);
      if (r == static_cast<int>(members.size()) + 1) {
        for (int el = x, tgt = t; el != -1;) {  // apply the exchange chain
          const int pel = parent_el[el][tgt - 1];
          const int ptgt = parent_tgt[el][tgt - 1];
          result.side[el] = tgt;
          el = pel;
          tgt = ptgt;
        }
        return true;
      }
      // fundamental circuit members may be displaced to the other side
      for (int y : members) {
        const int other = 3 - t;
        if (parent_el[y][other - 1] != -2) continue;
        if (rank_of(t, members, y, x) == static_cast<int>(members.size())) {
          push(y, other, x, t);
        }
      }
    }
    return false;
  };

  for (int e = 0; e < m; ++e) {
    if (!try_augment(e)) continue;
    ++result.rank;
    for (int s : {1, 2}) {  // oracle sanity after every exchange chain
      const auto members = members_of(s);
      if (rank_of(s, members, -1, -1) != static_cast<int>(members.size())) {
        throw OracleInconsistencyError(
            "matroid_union: assigned set became dependent after augmenting");
      }
    }
  }
  return result;
}

namespace detail {

// Canonical element list: each double edge contributes two consecutive
// copies, then the single edges.
inline std::vector<Edge> multigraph_elements(const UndirectedMultigraph& m) {
  std::vector<Edge> elements;
  elements.reserve(m.element_count());
  for (const Edge& e : m.double_edges) {
    elements.push_back(e);
    elements.push_back(e);
  }
  for (const Edge& e : m.single_edges) elements.push_back(e);
  return elements;
}

struct UnionAssignment {
  int rank = 0;
  std::vector<Edge> elements;
  std::vector<int> side;
};

inline UnionAssignment union_with_retry(const std::vector<Edge>& elements,
                                        int n, int d, std::uint64_t seed,
                                        const EdgeRankFn& rank_b,
                                        const DistanceRankOracle* custom) {
  // One retry with fresh seeds and a larger coordinate range covers the rare
  // non-generic random sample in the d >= 3 oracle.
  for (int attempt = 0;; ++attempt) {
    DistanceRankOracle oracle =
        custom != nullptr
            ? *custom
            : make_distance_rank_oracle(n, d, mix_seed(seed, 77 + attempt), 5,
                                        (std::int64_t(1) << 20)
                                            << (2 * attempt));
    try {
      const auto result = matroid_union(elements, oracle.rank, rank_b);
      return UnionAssignment{result.rank, elements, result.side};
    } catch (const OracleInconsistencyError&) {
      if (custom != nullptr || d == 2 || attempt >= 1) throw;
    }
  }
}

}  // namespace detail

/// Generic pseudorange rank of a multigraph: union of the distance rigidity
/// matroid with the cycle matroid over the multigraph's elements.
inline int matroid_union_rank(const UndirectedMultigraph& m, int d,
                              std::uint64_t seed = 0,
                              const DistanceRankOracle* distance_oracle = nullptr) {
  const auto elements = detail::multigraph_elements(m);
  const int n = m.n;
  EdgeRankFn cycle_rank = [n](const std::vector<Edge>& edges) {
    return graphic_rank(n, edges);
  };
  return detail::union_with_retry(elements, n, d, seed, cycle_rank,
                                  distance_oracle)
      .rank;
}

struct DecompositionWitness {
  Decomposition decomposition;
  int rank_d = 0;
  int rank_s = 0;
};

/// Outcome of a rigid-decomposition search. When `rigid` the witness attains
/// the bound; otherwise it is the best split found and `deficit` counts the
/// missing degrees of freedom.
struct DecompositionSearch {
  bool rigid = false;
  DecompositionWitness witness;
  int rank = 0;
  int bound = 0;
  int deficit = 0;
};

namespace detail {

inline std::vector<Edge> sorted_unique(std::set<Edge> edges) {
  return std::vector<Edge>(edges.begin(), edges.end());
}

inline DecompositionSearch assemble_search(
    const detail::UnionAssignment& assignment, int n, int bound,
    std::set<Edge> base_d, std::set<Edge> base_s, int base_rank_d,
    int base_rank_s) {
  DecompositionSearch search;
  search.bound = bound;
  int assigned_d = 0, assigned_s = 0;
  std::set<Edge> e_d = std::move(base_d);
  std::set<Edge> e_s = std::move(base_s);
  for (std::size_t i = 0; i < assignment.elements.size(); ++i) {
    switch (assignment.side[i]) {
      case 1:
        ++assigned_d;
        e_d.insert(assignment.elements[i]);
        break;
      case 2:
        ++assigned_s;
        e_s.insert(assignment.elements[i]);
        break;
      default:
        e_d.insert(assignment.elements[i]);  // spanned on both sides; park in D
        break;
    }
  }
  search.witness.rank_d = base_rank_d + assigned_d;
  search.witness.rank_s = base_rank_s + assigned_s;
  search.witness.decomposition =
      Decomposition{SimpleGraph(n, sorted_unique(std::move(e_d))),
                    SimpleGraph(n, sorted_unique(std::move(e_s)))};
  search.rank = assignment.rank + base_rank_d + base_rank_s;
  search.rigid = search.rank == bound;
  search.deficit = bound - search.rank;
  return search;
}

}  // namespace detail

/// Search for a decomposition into a distance-rigid graph and a connected
/// graph; both exist exactly when the multigraph's generic pseudorange rank
/// attains S_P(n, d).
inline DecompositionSearch find_rigid_decomposition(
    const UndirectedMultigraph& m, int d, std::uint64_t seed = 0,
    const DistanceRankOracle* distance_oracle = nullptr) {
  const int n = m.n;
  EdgeRankFn cycle_rank = [n](const std::vector<Edge>& edges) {
    return graphic_rank(n, edges);
  };
  const auto assignment = detail::union_with_retry(
      detail::multigraph_elements(m), n, d, seed, cycle_rank, distance_oracle);
  std::set<Edge> doubles(m.double_edges.begin(), m.double_edges.end());
  return detail::assemble_search(assignment, n, s_p(n, d), doubles, doubles, 0,
                                 0);
}

namespace detail {

inline DecompositionSearch find_gnss_decomposition_with(
    const GnssGraph& gg, int d, const DistanceRankOracle& oracle);

}  // namespace detail

/// GNSS variant: only the pseudorange edges are split; the known-distance
/// edges always live on the distance side and the synchronization edges on
/// the clock side. Realized as the union of the matroids contracted by those
/// fixed edge sets.
inline DecompositionSearch find_gnss_decomposition(
    const GnssGraph& gg, int d, std::uint64_t seed = 0,
    const DistanceRankOracle* distance_oracle = nullptr) {
  for (int attempt = 0;; ++attempt) {
    const DistanceRankOracle oracle =
        distance_oracle != nullptr
            ? *distance_oracle
            : make_distance_rank_oracle(gg.vertex_count(), d,
                                        mix_seed(seed, 7 + attempt), 5,
                                        (std::int64_t(1) << 20)
                                            << (2 * attempt));
    try {
      return detail::find_gnss_decomposition_with(gg, d, oracle);
    } catch (const OracleInconsistencyError&) {
      if (distance_oracle != nullptr || d == 2 || attempt >= 1) throw;
    }
  }
}

namespace detail {

inline DecompositionSearch find_gnss_decomposition_with(
    const GnssGraph& gg, int d, const DistanceRankOracle& oracle) {
  const int n = gg.vertex_count();
  const auto multigraph = underlying_multigraph(gg.gamma);
  const auto elements = detail::multigraph_elements(multigraph);

  // greedy basis of the fixed distance edges
  std::vector<Edge> basis_d;
  for (const Edge& e : gg.g_d.edges()) {
    std::vector<Edge> probe = basis_d;
    probe.push_back(e);
    if (oracle.rank(probe) == static_cast<int>(basis_d.size()) + 1) {
      basis_d.push_back(e);
    }
  }
  // spanning forest of the fixed synchronization edges
  std::vector<Edge> basis_s;
  {
    std::vector<Edge> probe;
    for (const Edge& e : gg.g_s.edges()) {
      probe = basis_s;
      probe.push_back(e);
      if (graphic_rank(n, probe) == static_cast<int>(basis_s.size()) + 1) {
        basis_s.push_back(e);
      }
    }
  }
  const int base_rank_d = static_cast<int>(basis_d.size());
  const int base_rank_s = static_cast<int>(basis_s.size());

  EdgeRankFn contracted_d = [&oracle, basis_d,
                             base_rank_d](const std::vector<Edge>& edges) {
    std::vector<Edge> all = basis_d;
    all.insert(all.end(), edges.begin(), edges.end());
    return oracle.rank(all) - base_rank_d;
  };
  EdgeRankFn contracted_s = [n, basis_s,
                             base_rank_s](const std::vector<Edge>& edges) {
    std::vector<Edge> all = basis_s;
    all.insert(all.end(), edges.begin(), edges.end());
    return graphic_rank(n, all) - base_rank_s;
  };

  const auto result = matroid_union(elements, contracted_d, contracted_s);
  detail::UnionAssignment assignment{result.rank, elements, result.side};

  std::set<Edge> base_d(gg.g_d.edges().begin(), gg.g_d.edges().end());
  std::set<Edge> base_s(gg.g_s.edges().begin(), gg.g_s.edges().end());
  base_d.insert(multigraph.double_edges.begin(), multigraph.double_edges.end());
  base_s.insert(multigraph.double_edges.begin(), multigraph.double_edges.end());
  return detail::assemble_search(assignment, n, s_p(n, d), std::move(base_d),
                                 std::move(base_s), base_rank_d, base_rank_s);
}

}  // namespace detail

}  // namespace prr
