#include <doctest.h>

#include <random>
#include <set>

#include "prr/gnss.hpp"
#include "prr/io.hpp"
#include "test_support.hpp"

using namespace prr;

TEST_CASE("gnss graph construction") {
  SUBCASE("mono-constellation example: clique on satellites, path sync") {
    // one constellation of four satellites, two receivers, six pseudoranges,
    // one distance edge
    Scenario s = testing::fig1a_scenario();
    s.constellations.resize(1);
    s.pseudoranges = {{"G1", "r1"}, {"G2", "r1"}, {"G3", "r1"},
                      {"G2", "r2"}, {"G3", "r2"}, {"G4", "r2"}};
    const GnssGraph g = build_gnss_graph(s);
    CHECK(g.vertex_count() == 6);
    CHECK(g.gamma.arc_count() == 6);
    CHECK(g.g_d.edge_count() == 4 * 3 / 2 + 1);  // K4 plus the receiver pair
    CHECK(g.g_s.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
    // every pseudorange arc runs satellite -> receiver
    for (const Arc& a : g.gamma.arcs()) {
      CHECK(a.tail < 4);
      CHECK(a.head >= 4);
    }
  }
  SUBCASE("full two-constellation fixture") {
    const GnssGraph g = build_gnss_graph(testing::fig1b_scenario());
    CHECK(g.vertex_count() == 10);
    CHECK(g.gamma.arc_count() == 8);
    CHECK(g.g_d.edge_count() == 8 * 7 / 2 + 1);
    CHECK(g.g_s.edge_count() == 6);  // two spanning paths of four satellites
  }
  SUBCASE("one satellite and one receiver") {
    Scenario s;
    s.dimension = 2;
    Eigen::VectorXd sat(2), rec(2);
    sat << 5, 5;
    rec << 0, 0;
    s.constellations = {{"C", 0.0, {{"C1", sat}}}};
    s.receivers = {{"R1", rec, 0.0}};
    s.pseudoranges = {{"C1", "R1"}};
    const GnssGraph g = build_gnss_graph(s);
    CHECK(g.g_d.edge_count() == 0);
    CHECK(g.g_s.edge_count() == 0);
    CHECK(g.gamma.arc_count() == 1);
  }
  SUBCASE("singleton constellations have no sync edges") {
    Scenario s;
    s.dimension = 2;
    Eigen::VectorXd a(2), b(2);
    a << 1, 2;
    b << 3, 4;
    s.constellations = {{"A", 0.0, {{"A1", a}}}, {"B", 0.1, {{"B1", b}}}};
    const GnssGraph g = build_gnss_graph(s);
    CHECK(g.g_s.edge_count() == 0);
    CHECK(g.g_d.edge_count() == 1);  // the two known satellites
  }
  SUBCASE("invalid edges are rejected") {
    Scenario s = testing::fig1b_scenario();
    s.pseudoranges.push_back({"r1", "G1"});  // wrong direction
    CHECK_THROWS_AS(build_gnss_graph(s), std::invalid_argument);
    s = testing::fig1b_scenario();
    s.distances.push_back({"G1", "r1"});  // satellite in a distance edge
    CHECK_THROWS_AS(build_gnss_graph(s), std::invalid_argument);
    s = testing::fig1b_scenario();
    s.pseudoranges.push_back({"nope", "r1"});
    CHECK_THROWS_AS(build_gnss_graph(s), std::invalid_argument);
  }
}

TEST_CASE("solvability of the two-receiver fixtures") {
  SUBCASE("mono-constellation network cannot be located") {
    const auto report = is_solvable(testing::fig1a_scenario(), 17);
    CHECK_FALSE(report.solvable);
    CHECK(report.bound == 33);
    CHECK(report.numeric.rank <= 32);
    CHECK(report.verdicts_agree);
    CHECK_FALSE(report.decomposition.rigid);
  }
  SUBCASE("bi-constellation network is solvable") {
    const auto report = is_solvable(testing::fig1b_scenario(), 18);
    CHECK(report.solvable);
    CHECK(report.numeric.rank == 33);
    CHECK(report.decomposition.rank == 33);
    CHECK(report.verdicts_agree);
  }
  SUBCASE("classical single-receiver fix with four satellites") {
    RandomScenarioParams params;
    params.receivers = 1;
    params.constellations = 1;
    params.satellites_per_constellation = 4;
    params.visibility = 4;
    params.dimension = 3;
    const auto report = is_solvable(generate_random_scenario(params, 5), 19);
    CHECK(report.solvable);
    CHECK(report.verdicts_agree);
  }
  SUBCASE("fewer satellites than dimensions: warning, numeric path only") {
    RandomScenarioParams params;
    params.receivers = 1;
    params.constellations = 1;
    params.satellites_per_constellation = 2;
    params.visibility = 2;
    params.dimension = 3;
    const auto report = is_solvable(generate_random_scenario(params, 6), 20);
    CHECK_FALSE(report.warning.empty());
    CHECK_FALSE(report.combinatorial_ran);
    CHECK_FALSE(report.solvable);
  }
}

TEST_CASE("constraint-graph fixtures carry the scenario ranks") {
  const auto fig3a = load_graph_file(testing::fixture_path("fig3a.json"));
  const auto fig3b = load_graph_file(testing::fixture_path("fig3b.json"));
  REQUIRE(fig3a.has_gnss_parts);
  REQUIRE(fig3b.has_gnss_parts);
  CHECK(generic_gnss_rank_numeric(fig3b.graph, 3, 5, 33).rank == 33);
  CHECK(generic_gnss_rank_numeric(fig3a.graph, 3, 5, 34).rank <= 32);
  const auto search = find_gnss_decomposition(fig3b.graph, 3, 35);
  CHECK(search.rigid);
  CHECK(search.witness.rank_d == s_d(10, 3));
  CHECK(search.witness.rank_s == 9);
}

TEST_CASE("minimum measurement counts") {
  CHECK(min_measurements(1, 1, 3) == 4);
  CHECK(min_measurements(2, 2, 3) == 9);
  CHECK(min_measurements(2, 1, 3) == 8);
  CHECK_THROWS_AS(min_measurements(0, 1, 3), std::invalid_argument);
}

TEST_CASE("measurement simulation") {
  const Scenario s = testing::fig1b_scenario();
  SUBCASE("noiseless vector equals the constraint values at the truth") {
    const ScenarioIndex idx = index_scenario(s);
    const auto truth = scenario_configuration(s);
    const Eigen::VectorXd y = simulate_measurements(s);
    REQUIRE(y.size() == 9);
    for (int k = 0; k < 8; ++k) {
      const auto& [sat, rec] = s.pseudoranges[k];
      CHECK(y(k) == doctest::Approx(pseudorange(truth, idx.index.at(sat),
                                                idx.index.at(rec))));
    }
    CHECK(y(8) == doctest::Approx((s.receivers[0].position -
                                   s.receivers[1].position)
                                      .norm()));
  }
  SUBCASE("synchronized clocks make pseudoranges distances") {
    Scenario sync = s;
    sync.constellations[0].bias = 0.0;
    sync.constellations[1].bias = 0.0;
    sync.receivers[0].bias = 0.0;
    sync.receivers[1].bias = 0.0;
    const ScenarioIndex idx = index_scenario(sync);
    const auto truth = scenario_configuration(sync);
    const Eigen::VectorXd y = simulate_measurements(sync);
    for (int k = 0; k < 8; ++k) {
      const auto& [sat, rec] = sync.pseudoranges[k];
      CHECK(y(k) == doctest::Approx(
                        truth.distance(idx.index.at(sat), idx.index.at(rec))));
    }
  }
  SUBCASE("noise is reproducible per seed") {
    Scenario noisy = s;
    noisy.noise_sigma = 0.05;
    const Eigen::VectorXd y1 = simulate_measurements(noisy, 99);
    const Eigen::VectorXd y2 = simulate_measurements(noisy, 99);
    const Eigen::VectorXd y3 = simulate_measurements(noisy, 100);
    CHECK(y1 == y2);
    CHECK(y1 != y3);
    CHECK((y1 - simulate_measurements(s)).cwiseAbs().maxCoeff() < 0.5);
  }
}

TEST_CASE("parameter partition sizes") {
  CHECK(partition_parameters(testing::fig1b_scenario()).unknown_count() == 9);

  RandomScenarioParams params;
  params.receivers = 1;
  params.constellations = 1;
  params.satellites_per_constellation = 4;
  params.visibility = 4;
  params.dimension = 3;
  const Scenario pvt = generate_random_scenario(params, 2);
  CHECK(partition_parameters(pvt).unknown_count() == 4);  // d + 1

  Scenario empty = pvt;
  empty.receivers.clear();
  empty.pseudoranges.clear();
  CHECK(partition_parameters(empty).unknown_count() == 0);
}

TEST_CASE("newton estimator") {
  const Scenario s = testing::fig1b_scenario();
  const Eigen::VectorXd y = simulate_measurements(s);

  SUBCASE("recovers the truth from a perturbed start") {
    EstimateOptions opt;
    opt.perturbation = 0.1;
    opt.seed = 4;
    const auto result = estimate(s, y, opt);
    CHECK(result.converged);
    CHECK_FALSE(result.rank_deficient);
    CHECK(result.iterations <= 50);
    CHECK(result.residual_norm < 1e-10);
    for (int r = 0; r < 2; ++r) {
      CHECK((result.receiver_positions.col(r) - s.receivers[r].position).norm() <
            1e-6);
      CHECK(result.receiver_biases(r) ==
            doctest::Approx(s.receivers[r].bias).epsilon(1e-6));
    }
    CHECK(result.constellation_biases(1) ==
          doctest::Approx(s.constellations[1].bias).epsilon(1e-6));
  }
  SUBCASE("exact start converges immediately") {
    EstimateOptions opt;
    opt.perturbation = 0.0;
    const auto result = estimate(s, y, opt);
    CHECK(result.converged);
    CHECK(result.iterations <= 1);
    CHECK(result.residual_norm < 1e-12);
  }
  SUBCASE("unsolvable scenario is reported rank deficient, not crashed") {
    const Scenario bad = testing::fig1a_scenario();
    const Eigen::VectorXd yb = simulate_measurements(bad);
    EstimateOptions opt;
    opt.perturbation = 0.05;
    opt.seed = 8;
    const auto result = estimate(bad, yb, opt);
    CHECK(result.rank_deficient);
    CHECK(result.jacobian_rank < result.unknown_count);
    CHECK_FALSE(result.diagnostic.empty());
  }
  SUBCASE("measurement vector length is checked") {
    CHECK_THROWS_AS(estimate(s, Eigen::VectorXd::Zero(3)), std::invalid_argument);
  }
}

TEST_CASE("estimator jacobian matches finite differences") {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    RandomScenarioParams params;
    params.receivers = 2;
    params.constellations = 2;
    params.satellites_per_constellation = 3;
    params.visibility = 2;
    params.inter_receiver_edges = 1;
    params.dimension = 3;
    const Scenario s = generate_random_scenario(params, 7000 + trial);
    Eigen::VectorXd p = partition_parameters(s).unknown;
    for (Eigen::Index i = 0; i < p.size(); ++i) {
      p(i) += uniform_symmetric(rng, 0.05);
    }
    const Eigen::MatrixXd analytic = measurement_jacobian(s, p);
    const double h = 1e-7;
    Eigen::MatrixXd fd(analytic.rows(), analytic.cols());
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      Eigen::VectorXd plus = p, minus = p;
      plus(j) += h;
      minus(j) -= h;
      fd.col(j) =
          (measurement_function(s, plus) - measurement_function(s, minus)) /
          (2.0 * h);
    }
    CHECK((analytic - fd).norm() <= 1e-6 * std::max(1.0, analytic.norm()));
  }
}

TEST_CASE("random scenario generation") {
  SUBCASE("classical fix shape") {
    RandomScenarioParams params;
    params.receivers = 1;
    params.constellations = 1;
    params.satellites_per_constellation = 4;
    params.visibility = 4;
    params.dimension = 3;
    const Scenario s = generate_random_scenario(params, 3);
    CHECK(s.satellite_count() == 4);
    CHECK(s.pseudoranges.size() == 4);
    for (const auto& c : s.constellations) {
      for (const auto& sat : c.satellites) {
        CHECK(sat.position.norm() == doctest::Approx(10.0));
      }
    }
    for (const auto& r : s.receivers) {
      CHECK(r.position.minCoeff() >= 0.0);
      CHECK(r.position.maxCoeff() <= 1.0);
      CHECK(std::abs(r.bias) <= 1.0);
    }
  }
  SUBCASE("two-receiver bi-constellation shape is solvable") {
    RandomScenarioParams params;
    params.receivers = 2;
    params.constellations = 2;
    params.satellites_per_constellation = 2;
    params.visibility = 2;
    params.inter_receiver_edges = 1;
    params.dimension = 3;
    const Scenario s = generate_random_scenario(params, 21);
    CHECK(s.measurement_count() == 9);
    CHECK(s.measurement_count() == min_measurements(2, 2, 3));
    CHECK(is_solvable(s, 22).solvable);
  }
  SUBCASE("same seed reproduces the scenario exactly") {
    RandomScenarioParams params;
    params.receivers = 3;
    params.constellations = 2;
    params.satellites_per_constellation = 3;
    params.visibility = 2;
    params.inter_receiver_edges = 2;
    const auto a = generate_random_scenario(params, 77);
    const auto b = generate_random_scenario(params, 77);
    CHECK(scenario_to_json(a) == scenario_to_json(b));
  }
  SUBCASE("infeasible counts are rejected") {
    RandomScenarioParams params;
    params.visibility = 5;
    params.satellites_per_constellation = 4;
    CHECK_THROWS_AS(generate_random_scenario(params, 1), std::invalid_argument);
    params.visibility = 2;
    params.receivers = 2;
    params.inter_receiver_edges = 2;
    CHECK_THROWS_AS(generate_random_scenario(params, 1), std::invalid_argument);
  }
}

TEST_CASE("numeric and combinatorial solvability verdicts agree on random "
          "scenarios") {
  std::mt19937_64 rng(8080);
  for (int trial = 0; trial < 100; ++trial) {
    RandomScenarioParams params;
    params.dimension = 2 + static_cast<int>(uniform_integer(rng, 0, 1));
    params.receivers = 1 + static_cast<int>(uniform_integer(rng, 0, 2));
    params.constellations = 1 + static_cast<int>(uniform_integer(rng, 0, 1));
    params.satellites_per_constellation =
        2 + static_cast<int>(uniform_integer(rng, 0, 2));
    params.visibility = static_cast<int>(uniform_integer(
        rng, 1, params.satellites_per_constellation));
    params.inter_receiver_edges = static_cast<int>(uniform_integer(
        rng, 0, params.receivers * (params.receivers - 1) / 2));
    const Scenario s = generate_random_scenario(params, 9000 + trial);
    if (s.satellite_count() < s.dimension) continue;
    const auto report = is_solvable(s, 9100 + trial);
    CHECK(report.combinatorial_ran);
    CHECK(report.verdicts_agree);
  }
}

TEST_CASE("lemma-4 bound: minimal topologies are sharp") {
  for (int d : {2, 3}) {
    for (int R = 1; R <= 3; ++R) {
      for (int C = 1; C <= 3; ++C) {
        const Scenario s =
            testing::minimal_solvable_scenario(R, C, d, 100 * R + 10 * C + d);
        REQUIRE(s.measurement_count() == min_measurements(R, C, d));
        const auto report = is_solvable(s, 40 * R + 4 * C + d);
        CHECK(report.solvable);
        CHECK(report.verdicts_agree);
      }
    }
  }
}

TEST_CASE("formation savings") {
  SUBCASE("table rows match hand arithmetic") {
    const auto d2 = formation_savings(10, 2);
    CHECK(d2.two_way == 34);
    CHECK(d2.pseudorange == 26);
    CHECK(d2.saved == 8);
    CHECK(d2.ratio == doctest::Approx(8.0 / 34.0));

    const auto d3 = formation_savings(10, 3);
    CHECK(d3.two_way == 48);
    CHECK(d3.pseudorange == 33);
    CHECK(d3.saved == 15);
    CHECK(d3.ratio == doctest::Approx(0.3125));
  }
  SUBCASE("ratios approach the asymptotes") {
    CHECK(std::abs(formation_savings(100, 2).ratio - 0.25) < 0.02);
    CHECK(std::abs(formation_savings(100, 3).ratio - 1.0 / 3.0) < 0.02);
  }
  SUBCASE("too few agents is an error") {
    CHECK_THROWS_AS(formation_savings(3, 3), std::invalid_argument);
  }
}

TEST_CASE("one-way formation graphs are rigid with leader feedback only") {
  for (int d : {2, 3}) {
    for (int n : {d + 1, d + 4, 9}) {
      const auto g = formation_graph(n, d);
      // mutual arcs only within the first d+1 agents
      for (const Arc& a : g.arcs()) {
        if (a.tail > d || a.head > d) CHECK(a.head > std::min<int>(a.tail, d));
      }
      CHECK(generic_rank_numeric(g, d, 5, 31 * n + d).rank == s_p(n, d));
    }
  }
}
