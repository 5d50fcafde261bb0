// Acceptance suite: runs every headline requirement end to end and prints
// one PASS/FAIL line per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "prr/combinatorics.hpp"
#include "prr/gnss.hpp"
#include "prr/io.hpp"
#include "prr/rigidity.hpp"
#include "test_support.hpp"

using namespace prr;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int id, std::string label) : id_(id), label_(std::move(label)) {}

  void require(bool condition, const std::string& detail) {
    if (!condition && note_.empty()) note_ = detail;
    ok_ = ok_ && condition;
  }

  ~Criterion() {
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start_)
                          .count();
    std::printf("[%s] criterion %2d: %s (%.0f ms)%s%s\n", ok_ ? "PASS" : "FAIL",
                id_, label_.c_str(), ms, note_.empty() ? "" : " -- ",
                note_.c_str());
    if (!ok_) ++failures;
  }

 private:
  int id_;
  std::string label_;
  std::string note_;
  bool ok_ = true;
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::string fx(const std::string& name) { return testing::fixture_path(name); }

// Brute-force route to the union rank, independent of the augmenting-path
// algorithm: evaluate every decomposition at random integer configurations.
int exhaustive_union_rank(const UndirectedMultigraph& m, int d,
                          std::uint64_t seed) {
  const RandomizedDistanceOracle oracle(m.n, d, 3, seed);
  int best = 0;
  for (const auto& dec : enumerate_decompositions(m, 22)) {
    best = std::max(best, oracle.rank(dec.g_d.edges()) + graphic_rank(dec.g_s));
  }
  return best;
}

void criterion_1_rank_bounds() {
  Criterion c(1, "closed-form rank bounds s_d and s_p");
  for (int d : {2, 3}) {
    const int trivial_motions = d + d * (d - 1) / 2;
    for (int n = 1; n <= 12; ++n) {
      const int expected_sd =
          n >= d + 1 ? n * d - trivial_motions : n * (n - 1) / 2;
      c.require(s_d(n, d) == expected_sd,
                "s_d mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d));
      c.require(s_p(n, d) == expected_sd + n - 1,
                "s_p mismatch at n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
  }
  // hand-computed spot values, including the n <= d branch
  c.require(s_d(4, 2) == 5 && s_d(2, 3) == 1 && s_d(5, 3) == 9 && s_d(1, 2) == 0,
            "hand-computed s_d values");
  c.require(s_p(3, 2) == 5 && s_p(4, 2) == 8 && s_p(10, 3) == 33 &&
                s_p(12, 3) == 41 && s_p(1, 2) == 0,
            "hand-computed s_p values");
}

void criterion_2_figure_fixtures() {
  Criterion c(2, "example frameworks: two flexible, two rigid");
  const struct {
    const char* file;
    int rank;
    int bound;
  } cases[] = {{"fig2a.json", 4, 5},
               {"fig2b.json", 4, 5},
               {"fig2c.json", 8, 8},
               {"fig2d.json", 8, 8}};
  for (const auto& tc : cases) {
    const auto loaded = load_graph_file(fx(tc.file));
    const auto numeric = generic_rank_numeric(loaded.graph.gamma, 2, 10, 2024);
    const int union_rank =
        matroid_union_rank(underlying_multigraph(loaded.graph.gamma), 2);
    c.require(numeric.rank == tc.rank,
              std::string(tc.file) + ": numeric rank " +
                  std::to_string(numeric.rank));
    c.require(numeric.trials_agree,
              std::string(tc.file) + ": rank unstable across seeds");
    c.require(union_rank == tc.rank,
              std::string(tc.file) + ": matroid rank " + std::to_string(union_rank));
    c.require(s_p(loaded.graph.vertex_count(), 2) == tc.bound,
              std::string(tc.file) + ": bound");
  }
}

void criterion_3_golden_matrix() {
  Criterion c(3, "rigidity matrix entries at the worked example");
  const auto loaded = load_graph_file(fx("fig2a.json"));
  MatrixX<double> pos(2, 3);
  pos << 0, 1, 0, 0, 0, 2;
  VectorX<double> biases(3);
  biases << 0.4, -1.3, 2.2;  // bias values do not enter the matrix
  const Configuration<double> config(pos, biases);
  const auto m = pseudorange_rigidity_matrix(loaded.graph.gamma, config);
  const double s5 = std::sqrt(5.0);
  MatrixX<double> expected(4, 9);
  // clang-format off
  expected << -1,  0,  1,  0,  0, 0,  -1,   1,  0,
              -1,  0,  1,  0,  0, 0,   1,  -1,  0,
               0, -2,  0,  0,  0, 2,  -2,   0,  2,
               0,  0,  1, -2, -1, 2,   0, -s5, s5;
  // clang-format on
  c.require(m.rows() == 4 && m.cols() == 9, "matrix shape");
  c.require((m - expected).cwiseAbs().maxCoeff() < 1e-12,
            "entry deviates by more than 1e-12");
}

void criterion_4_cross_check() {
  Criterion c(4, "matroid union = decomposition max = numeric rank, 200 graphs");
  std::mt19937_64 rng(777);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(uniform_integer(rng, 0, 4));  // <= 7
    const auto g = testing::random_digraph(n, 16, rng);
    const auto m = underlying_multigraph(g);
    const int union_rank = matroid_union_rank(m, 2, trial);
    const int brute = exhaustive_union_rank(m, 2, 1000 + trial);
    const int numeric =
        static_cast<int>(generic_rank_numeric(g, 2, 5, 2000 + trial).rank);
    c.require(union_rank == brute && brute == numeric,
              "2D disagreement at trial " + std::to_string(trial) + ": " +
                  std::to_string(union_rank) + "/" + std::to_string(brute) +
                  "/" + std::to_string(numeric));
    ++checked;
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(uniform_integer(rng, 0, 3));  // <= 6
    const auto g = testing::random_digraph(n, 16, rng);
    const auto m = underlying_multigraph(g);
    const int union_rank = matroid_union_rank(m, 3, trial);
    const int brute = exhaustive_union_rank(m, 3, 5000 + trial);
    const int numeric =
        static_cast<int>(generic_rank_numeric(g, 3, 5, 6000 + trial).rank);
    c.require(union_rank == brute && brute == numeric,
              "3D disagreement at trial " + std::to_string(trial) + ": " +
                  std::to_string(union_rank) + "/" + std::to_string(brute) +
                  "/" + std::to_string(numeric));
    ++checked;
  }
  c.require(checked == 200, "expected 200 graphs");
}

void criterion_5_generic_property() {
  Criterion c(5, "rank is configuration-independent and reversal-invariant");
  std::mt19937_64 rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(uniform_integer(rng, 0, 1));
    const int n = 3 + static_cast<int>(uniform_integer(rng, 0, 4));
    const auto g = testing::random_digraph(n, 3 * n, rng);
    const auto forward = generic_rank_numeric(g, d, 10, 3000 + trial);
    c.require(forward.trials_agree,
              "rank varies across configurations at trial " + std::to_string(trial));
    const auto backward = generic_rank_numeric(g.reversed(), d, 10, 4000 + trial);
    c.require(forward.rank == backward.rank,
              "arc reversal changed the rank at trial " + std::to_string(trial));
  }
}

void criterion_6_gnss_solvability() {
  Criterion c(6, "cooperative fixtures: mono unsolvable, bi-constellation solvable");
  const Scenario fig1a = load_scenario_file(fx("fig1a_scenario.json"));
  const Scenario fig1b = load_scenario_file(fx("fig1b_scenario.json"));

  const auto rep_a = is_solvable(fig1a, 61);
  c.require(!rep_a.solvable, "mono-constellation scenario reported solvable");
  c.require(rep_a.bound == 33, "bound should be 33");
  c.require(rep_a.numeric.rank <= 32, "rank should be <= 32");
  c.require(rep_a.verdicts_agree, "verdict mismatch on the mono fixture");

  const auto rep_b = is_solvable(fig1b, 62);
  c.require(rep_b.solvable, "bi-constellation scenario reported unsolvable");
  c.require(rep_b.numeric.rank == 33, "rank should be 33");
  c.require(rep_b.verdicts_agree, "verdict mismatch on the bi fixture");
  c.require(rep_b.decomposition.rigid, "no witness decomposition found");
  const auto& witness = rep_b.decomposition.witness;
  c.require(randomized_distance_rank(witness.decomposition.g_d, 3, 5, 63) ==
                s_d(10, 3),
            "witness distance side is not rigid in R^3");
  c.require(connected_components(witness.decomposition.g_s).count == 1,
            "witness synchronization side is not connected");
}

void criterion_7_lemma4() {
  Criterion c(7, "measurement lower bound is sharp and necessary");
  // sharp: a topology at exactly R(d+1) + C - 1 measurements is solvable
  for (int d : {2, 3}) {
    for (int R = 1; R <= 3; ++R) {
      for (int C = 1; C <= 3; ++C) {
        const Scenario s =
            testing::minimal_solvable_scenario(R, C, d, 100 * R + 10 * C + d);
        c.require(s.measurement_count() == min_measurements(R, C, d),
                  "construction has the wrong measurement count");
        const auto rep = is_solvable(s, 71 * R + 7 * C + d);
        c.require(rep.solvable, "minimal construction unsolvable at R=" +
                                    std::to_string(R) + " C=" + std::to_string(C) +
                                    " d=" + std::to_string(d));
      }
    }
  }
  // necessary: 200 random scenarios below the bound, zero solvable
  std::mt19937_64 rng(723);
  int sampled = 0;
  while (sampled < 100) {  // random deletions from minimal constructions
    const int d = 2 + static_cast<int>(uniform_integer(rng, 0, 1));
    const int R = 1 + static_cast<int>(uniform_integer(rng, 0, 2));
    const int C = 1 + static_cast<int>(uniform_integer(rng, 0, 2));
    Scenario s = testing::minimal_solvable_scenario(R, C, d, 7000 + sampled);
    const int drop = 1 + static_cast<int>(uniform_integer(
                             rng, 0, std::min<int>(2, s.pseudoranges.size() - 1)));
    for (int k = 0; k < drop; ++k) {
      s.pseudoranges.erase(s.pseudoranges.begin() +
                           uniform_integer(rng, 0, s.pseudoranges.size() - 1));
    }
    const auto rep = is_solvable(s, 7500 + sampled);
    c.require(!rep.solvable, "scenario below the bound reported solvable");
    ++sampled;
  }
  while (sampled < 200) {  // random topologies below the bound
    const int d = 2 + static_cast<int>(uniform_integer(rng, 0, 1));
    RandomScenarioParams params;
    params.dimension = d;
    params.receivers = 1 + static_cast<int>(uniform_integer(rng, 0, 2));
    params.constellations = 1 + static_cast<int>(uniform_integer(rng, 0, 2));
    params.satellites_per_constellation =
        d + static_cast<int>(uniform_integer(rng, 0, 2));
    params.visibility =
        static_cast<int>(uniform_integer(rng, 1, params.satellites_per_constellation));
    params.inter_receiver_edges = static_cast<int>(
        uniform_integer(rng, 0, params.receivers * (params.receivers - 1) / 2));
    const Scenario s = generate_random_scenario(params, 8000 + sampled);
    if (s.measurement_count() >=
        min_measurements(params.receivers, params.constellations, d)) {
      continue;  // only sub-minimal samples count here
    }
    const auto rep = is_solvable(s, 8500 + sampled);
    c.require(!rep.solvable, "scenario below the bound reported solvable");
    ++sampled;
  }
  c.require(sampled == 200, "expected 200 sub-minimal samples");
}

void criterion_8_estimator() {
  Criterion c(8, "estimator recovers the truth from 100 perturbed starts");
  const Scenario s = load_scenario_file(fx("fig1b_scenario.json"));
  const Eigen::VectorXd y = simulate_measurements(s);
  int good = 0;
  for (int seed = 0; seed < 100; ++seed) {
    EstimateOptions opt;
    opt.perturbation = 0.1;
    opt.max_iter = 50;
    opt.tol = 1e-10;
    opt.seed = seed;
    const auto result = estimate(s, y, opt);
    double err = 0.0;
    for (int r = 0; r < s.receiver_count(); ++r) {
      err = std::max(err, (result.receiver_positions.col(r) -
                           s.receivers[r].position)
                              .norm());
    }
    if (result.converged && !result.rank_deficient && err < 1e-6 &&
        result.iterations <= 50 && result.residual_norm < 1e-10) {
      ++good;
    }
  }
  c.require(good >= 95, "only " + std::to_string(good) + "/100 runs recovered "
                        "the truth");
}

void criterion_9_formation_savings() {
  Criterion c(9, "formation measurement savings approach 25%/33%");
  const auto d2 = formation_savings(10, 2);
  c.require(d2.two_way == 34 && d2.pseudorange == 26 && d2.saved == 8,
            "n=10, d=2 row mismatch");
  const auto d3 = formation_savings(10, 3);
  c.require(d3.two_way == 48 && d3.pseudorange == 33 && d3.saved == 15,
            "n=10, d=3 row mismatch");
  c.require(std::abs(d3.ratio - 0.3125) < 1e-12, "n=10, d=3 ratio mismatch");
  c.require(std::abs(formation_savings(100, 2).ratio - 0.25) < 0.02,
            "d=2 ratio not within 2 points of 25%");
  c.require(std::abs(formation_savings(100, 3).ratio - 1.0 / 3.0) < 0.02,
            "d=3 ratio not within 2 points of 33%");
}

void criterion_10_double_banana() {
  Criterion c(10, "randomized oracle catches the flexible circuit");
  const auto banana = testing::double_banana();
  c.require(banana.edge_count() == 18, "edge count should meet 3n-6");
  const int rank = randomized_distance_rank(banana, 3, 5, 101);
  c.require(rank == 17, "rank " + std::to_string(rank) + ", expected 17 < 18");
}

void criterion_11_jacobian() {
  Criterion c(11, "analytic matrix rows match scaled finite differences");
  std::mt19937_64 rng(1111);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(uniform_integer(rng, 0, 1));
    const int n = 3 + static_cast<int>(uniform_integer(rng, 0, 4));
    const auto g = testing::random_digraph(n, 3 * n, rng);
    if (g.arc_count() == 0) continue;
    const auto config = sample_configuration<double>(n, d, 9000 + trial);
    const auto analytic = pseudorange_rigidity_matrix(g, config);
    const VectorX<double> p0 = config.as_parameter_vector();
    const double h = 1e-6;
    MatrixX<double> fd(g.arc_count(), p0.size());
    for (Eigen::Index j = 0; j < p0.size(); ++j) {
      VectorX<double> plus = p0, minus = p0;
      plus(j) += h;
      minus(j) -= h;
      fd.col(j) =
          (evaluate_constraints(
               g, Configuration<double>::from_parameter_vector(d, n, plus)) -
           evaluate_constraints(
               g, Configuration<double>::from_parameter_vector(d, n, minus))) /
          (2.0 * h);
    }
    for (int k = 0; k < g.arc_count(); ++k) {
      fd.row(k) *= config.distance(g.arcs()[k].tail, g.arcs()[k].head);
    }
    c.require((analytic - fd).norm() <= 1e-6 * std::max(1.0, analytic.norm()),
              "finite-difference mismatch at trial " + std::to_string(trial));
  }
}

}  // namespace

int main() {
  criterion_1_rank_bounds();
  criterion_2_figure_fixtures();
  criterion_3_golden_matrix();
  criterion_4_cross_check();
  criterion_5_generic_property();
  criterion_6_gnss_solvability();
  criterion_7_lemma4();
  criterion_8_estimator();
  criterion_9_formation_savings();
  criterion_10_double_banana();
  criterion_11_jacobian();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criteria FAILED\n", failures);
  }
  return failures;
}
