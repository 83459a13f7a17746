#include <algorithm>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "lfsync/csvio.hpp"
#include "lfsync/errors.hpp"
#include "lfsync/network.hpp"

using namespace lfsync;

namespace {

double balance_residual(const NetworkMatrices& mats) {
  const Vec ones = Vec::Ones(mats.L_m.rows());
  return ((mats.L_m - mats.A_ell) * ones).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("topology names round trip") {
  for (Topology t : {Topology::star_like, Topology::cyclic_like,
                     Topology::path, Topology::custom})
    CHECK(topology_from_string(to_string(t)) == t);
  CHECK(topology_from_string("star") == Topology::star_like);
  CHECK(topology_from_string("cyclic") == Topology::cyclic_like);
  CHECK_THROWS_AS((void)topology_from_string("ring"), ParseError);
}

TEST_CASE("path construction") {
  const NetworkSpec spec = build_topology(Topology::path, 3);
  REQUIRE(spec.leader_edges.size() == 1);
  CHECK(spec.leader_edges[0].i == 0);
  CHECK(spec.leader_edges[0].w == 1.0);
  REQUIRE(spec.follower_edges.size() == 2);
  CHECK(spec.follower_edges[0].i == 1);
  CHECK(spec.follower_edges[0].j == 0);
  CHECK(spec.follower_edges[1].i == 2);
  CHECK(spec.follower_edges[1].j == 1);
}

TEST_CASE("star construction") {
  const NetworkSpec spec = build_topology(Topology::star_like, 3);
  REQUIRE(spec.leader_edges.size() == 3);
  for (const auto& e : spec.leader_edges) CHECK(e.w == 0.5);
  REQUIRE(spec.follower_edges.size() == 6);
  for (const auto& e : spec.follower_edges) CHECK(e.w == 0.25);

  const NetworkSpec s1 = build_topology(Topology::star_like, 1);
  CHECK(s1.leader_edges.size() == 1);
  CHECK(s1.leader_edges[0].w == 1.0);
  CHECK(s1.follower_edges.empty());
}

TEST_CASE("agent count must be positive") {
  CHECK_THROWS_AS((void)build_topology(Topology::star_like, 0), InvalidCount);
  CHECK_THROWS_AS((void)build_topology(Topology::path, -2), InvalidCount);
}

TEST_CASE("cyclic leader weight policy bounds") {
  WeightPolicy p;
  p.cyclic_leader_weight = 0.0;
  CHECK_THROWS_AS((void)build_topology(Topology::cyclic_like, 5, p),
                  WeightPolicyViolation);
  p.cyclic_leader_weight = 1.5;
  CHECK_THROWS_AS((void)build_topology(Topology::cyclic_like, 5, p),
                  WeightPolicyViolation);
  p.cyclic_leader_weight = 1.0;
  CHECK_NOTHROW((void)build_topology(Topology::cyclic_like, 5, p));
}

TEST_CASE("path matrices m=3") {
  const NetworkMatrices mats =
      assemble_matrices(build_topology(Topology::path, 3));
  Mat L(3, 3);
  L << 1, 0, 0, -1, 1, 0, 0, -1, 1;
  CHECK((mats.L_m - L).cwiseAbs().maxCoeff() == 0.0);
  CHECK(mats.A_ell(0, 0) == 1.0);
  CHECK(mats.A_ell(1, 1) == 0.0);
  CHECK(mats.A_ell(2, 2) == 0.0);
  CHECK(mats.q_level == std::vector<int>{1, 2, 3});
  CHECK(balance_residual(mats) <= 1e-12);
}

TEST_CASE("star matrices m=3") {
  const NetworkMatrices mats =
      assemble_matrices(build_topology(Topology::star_like, 3));
  // L_m = I - 0.25 (ring adjacency); eigenvalues {0.5, 1.25, 1.25}
  for (int i = 0; i < 3; ++i) {
    CHECK(mats.L_m(i, i) == doctest::Approx(1.0));
    CHECK(mats.A_ell(i, i) == doctest::Approx(0.5));
    CHECK(mats.q_level[i] == 1);
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(mats.L_m(i, j) == doctest::Approx(-0.25));
  }
  Eigen::EigenSolver<Mat> es(mats.L_m, false);
  Vec re = es.eigenvalues().real();
  std::sort(re.data(), re.data() + re.size());
  CHECK(re(0) == doctest::Approx(0.5));
  CHECK(re(1) == doctest::Approx(1.25));
  CHECK(re(2) == doctest::Approx(1.25));
}

TEST_CASE("single agent collapses every topology") {
  for (Topology t : {Topology::star_like, Topology::cyclic_like,
                     Topology::path}) {
    const NetworkMatrices mats = assemble_matrices(build_topology(t, 1));
    CHECK(mats.L_m(0, 0) == doctest::Approx(1.0));
    CHECK(mats.A_ell(0, 0) == doctest::Approx(1.0));
    CHECK(mats.q_level == std::vector<int>{1});
  }
}

TEST_CASE("cyclic ring layers agents by distance from the single anchor") {
  const NetworkMatrices mats =
      assemble_matrices(build_topology(Topology::cyclic_like, 9));
  CHECK(mats.A_ell(0, 0) == doctest::Approx(0.5));
  for (int i = 1; i < 9; ++i) CHECK(mats.A_ell(i, i) == 0.0);
  // two-sided ring: depth grows toward the agents opposite the anchor
  CHECK(mats.q_level == std::vector<int>{1, 2, 3, 4, 5, 5, 4, 3, 2});
  CHECK(balance_residual(mats) <= 1e-12);
  CHECK((mats.D - Mat::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("random preset layers three q-levels") {
  const NetworkSpec spec = random9_preset();
  CHECK(spec.label == "random9");
  const NetworkMatrices mats = assemble_matrices(spec);
  CHECK(mats.q_level == std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 3});
  CHECK(validate_network(mats).all_pass());
}

TEST_CASE("validation passes on every built-in topology and size") {
  for (Topology t : {Topology::star_like, Topology::cyclic_like,
                     Topology::path})
    for (int m : {1, 3, 5, 7, 9, 11, 13}) {
      const NetworkMatrices mats = assemble_matrices(build_topology(t, m));
      const ValidationReport rep = validate_network(mats);
      INFO(to_string(t), " m=", m, "\n", rep.to_text());
      CHECK(rep.all_pass());
      // leader weight and q-level = 1 coincide
      for (int i = 0; i < m; ++i)
        CHECK((mats.A_ell(i, i) > 0.0) == (mats.q_level[i] == 1));
    }
}

TEST_CASE("validation reports the named failures") {
  NetworkMatrices mats = assemble_matrices(build_topology(Topology::star_like, 3));
  SUBCASE("zero leader weights") {
    mats.A_ell.setZero();
    const ValidationReport rep = validate_network(mats);
    CHECK_FALSE(rep.all_pass());
    for (const auto& c : rep.checks)
      if (c.name == "leader weight nonzero") CHECK_FALSE(c.pass);
  }
  SUBCASE("unbalanced edit is quantified") {
    mats.L_m(0, 1) -= 0.1;
    const ValidationReport rep = validate_network(mats);
    for (const auto& c : rep.checks)
      if (c.name == "balance residual") {
        CHECK_FALSE(c.pass);
        CHECK(c.value == doctest::Approx(0.1));
      }
  }
}

TEST_CASE("assembly rejects duplicates and unreachable agents") {
  NetworkSpec spec = build_topology(Topology::path, 3);
  spec.follower_edges.push_back({1, 0, 0.0});  // weight check fires first
  CHECK_THROWS_AS((void)assemble_matrices(spec), WeightPolicyViolation);

  NetworkSpec dup = build_topology(Topology::path, 2);
  dup.follower_edges.push_back({1, 0, 0.5});
  CHECK_THROWS_AS((void)assemble_matrices(dup), WeightPolicyViolation);

  // severing the leader leaves agents without a path from it
  NetworkSpec cut;
  cut.m = 2;
  cut.follower_edges.push_back({0, 1, 1.0});
  cut.follower_edges.push_back({1, 0, 1.0});
  CHECK_THROWS_AS((void)assemble_matrices(cut), UnreachableAgent);
}

TEST_CASE("distributed error map") {
  const NetworkMatrices mats =
      assemble_matrices(build_topology(Topology::path, 3));
  Vec y(3);
  y << 1.0, 2.0, 3.0;
  Vec yl(1);
  yl << 1.0;
  const Vec e = error_signal(mats, y, yl);
  CHECK(e(0) == doctest::Approx(0.0));
  CHECK(e(1) == doctest::Approx(1.0));
  CHECK(e(2) == doctest::Approx(1.0));

  const NetworkMatrices one = assemble_matrices(build_topology(Topology::path, 1));
  Vec y1(1), l1(1);
  y1 << 2.0;
  l1 << 1.0;
  CHECK(error_signal(one, y1, l1)(0) == doctest::Approx(1.0));

  Vec bad(2);
  CHECK_THROWS_AS((void)error_signal(mats, bad, yl), DimensionMismatch);
  Vec badl(2);
  CHECK_THROWS_AS((void)error_signal(mats, y, badl), DimensionMismatch);
}

TEST_CASE("consensual outputs yield zero error on balanced nets") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> cd(-10.0, 10.0);
  for (Topology t : {Topology::star_like, Topology::cyclic_like,
                     Topology::path}) {
    const NetworkMatrices mats = assemble_matrices(build_topology(t, 7));
    for (int k = 0; k < 100; ++k) {
      const double c = cd(rng);
      Vec yl(1);
      yl << c;
      CHECK(error_signal(mats, Vec::Constant(7, c), yl).cwiseAbs().maxCoeff() <=
            1e-12);
    }
  }
}

TEST_CASE("topology files parse strictly") {
  const std::string path = "test_topology_edges.txt";
  SUBCASE("valid file") {
    write_text_file(path,
                    "# two agents hanging off the leader\n"
                    "L 1 0.5\n"
                    "2 1 0.5\n"
                    "1 2 1.0\n");
    const NetworkSpec spec = load_topology_file(path);
    CHECK(spec.m == 2);
    CHECK(spec.topology == Topology::custom);
    REQUIRE(spec.leader_edges.size() == 1);
    CHECK(spec.leader_edges[0].i == 0);
    // "2 1 0.5": agent 1 measures agent 2
    bool found = false;
    for (const auto& e : spec.follower_edges)
      if (e.i == 0 && e.j == 1 && e.w == 0.5) found = true;
    CHECK(found);
    CHECK(validate_network(assemble_matrices(spec)).all_pass());
  }
  SUBCASE("duplicate edge") {
    write_text_file(path, "L 1 1.0\n1 2 0.5\n1 2 0.5\n");
    CHECK_THROWS_AS((void)load_topology_file(path), ParseError);
  }
  SUBCASE("leader as destination") {
    write_text_file(path, "1 L 1.0\n");
    CHECK_THROWS_AS((void)load_topology_file(path), ParseError);
  }
  SUBCASE("malformed record") {
    write_text_file(path, "L 1\n");
    CHECK_THROWS_AS((void)load_topology_file(path), ParseError);
  }
  SUBCASE("trailing token") {
    write_text_file(path, "L 1 1.0 extra\n");
    CHECK_THROWS_AS((void)load_topology_file(path), ParseError);
  }
  SUBCASE("zero-based index") {
    write_text_file(path, "L 0 1.0\n");
    CHECK_THROWS_AS((void)load_topology_file(path), ParseError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS((void)load_topology_file("no_such_edges.txt"), ParseError);
  }
  std::remove(path.c_str());
}
