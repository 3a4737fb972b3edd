#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "reconlab/error.hpp"
#include "reconlab/events.hpp"
#include "reconlab/isomorphism.hpp"
#include "reconlab/sampling.hpp"

using namespace reconlab;

namespace {

Graph random_graph(std::size_t n, std::uint64_t seed, double p = 0.5) {
  return sample_graph(EdgeProbabilities::constant(n, p), {seed, 17});
}

std::vector<VertexPair> all_pairs(std::size_t n) {
  std::vector<VertexPair> out;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) out.emplace_back(u, v);
  return out;
}

}  // namespace

TEST(Event, SmallExamples) {
  EXPECT_FALSE(check_event(Graph::complete(5), 1).holds);
  EXPECT_FALSE(check_event(Graph(5), 2).holds);
  EXPECT_THROW(check_event(Graph(3), 3), InputError);
  // a single vertex always has a moving copy of itself
  EXPECT_FALSE(check_event(Graph(2), 1).holds);
}

TEST(Event, ExhaustiveAgreementWithDirectQuantification) {
  for (std::size_t v : {4u, 5u, 6u}) {
    const std::uint64_t masks = std::uint64_t{1} << (v * (v - 1) / 2);
    const std::uint64_t stride = v == 6 ? 97 : 1;
    for (std::uint64_t m = 0; m < masks; m += stride) {
      const auto g = oracle::from_mask(v, m);
      for (std::size_t d = 1; d <= 2; ++d) {
        const auto r = check_event(g, d);
        ASSERT_EQ(r.holds, oracle::event_holds(g, d)) << v << " " << m << " " << d;
        if (!r.holds) {
          ASSERT_TRUE(r.witness);
          EXPECT_TRUE(verify_witness(*r.witness, d));
          EXPECT_EQ(r.witness->member, g);
        }
      }
    }
  }
}

TEST(Event, E1ImpliesAsymmetricAndMonotoneInDelta) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto g = random_graph(9, s);
    const bool e1 = check_event(g, 1).holds;
    if (e1) EXPECT_TRUE(is_asymmetric(g));
    if (check_event(g, 2).holds) EXPECT_TRUE(e1);
  }
}

TEST(Event, WitnessVerificationRejectsTampering) {
  const auto r = check_event(Graph::complete(6), 2);
  ASSERT_TRUE(r.witness);
  auto w = *r.witness;
  EXPECT_TRUE(verify_witness(w, 2));
  EXPECT_FALSE(verify_witness(w, 1));
  auto same = w;
  same.image = same.domain;
  EXPECT_FALSE(verify_witness(same, 2));
  auto broken = w;
  broken.member = Graph(6);
  broken.member.add_edge(broken.domain[0], broken.domain[1]);
  if (!broken.member.has_edge(broken.image[0], broken.image[1])) EXPECT_FALSE(verify_witness(broken, 2));
}

TEST(Event, CollectionStopsAtFirstViolation) {
  std::vector<Graph> graphs;
  for (std::uint64_t s = 0; graphs.size() < 3; ++s) {
    auto g = random_graph(10, s);
    if (check_event(g, 1).holds) graphs.push_back(g);
  }
  EXPECT_TRUE(check_event_collection(graphs, 1).holds);
  graphs.insert(graphs.begin() + 1, Graph::complete(10));
  const auto r = check_event_collection(graphs, 1);
  ASSERT_FALSE(r.holds);
  EXPECT_EQ(r.witness->member_index, 1u);
  graphs.push_back(Graph(9));
  EXPECT_THROW(check_event_collection(graphs, 1), InputError);
}

TEST(Ball, EnumerationSearchAndOracleAgree) {
  Philox4x32 rng(2024, 0);
  int violations = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t v = 6 + trial % 2;
    const std::size_t d = 1 + trial % 3 / 2;
    const auto g = random_graph(v, 500 + trial);
    const auto s = sample_edit_subset(v, 1 + trial % 4, rng);
    const bool ref = oracle::ball_event_holds(g, s.pairs(), d);
    BallOptions en{BallStrategy::enumerate};
    BallOptions se{BallStrategy::search};
    const auto a = check_event_ball(g, s, d, en);
    const auto b = check_event_ball(g, s, d, se);
    ASSERT_EQ(a.holds, ref) << trial;
    ASSERT_EQ(b.holds, ref) << trial;
    EXPECT_EQ(b.exactness, Exactness::exact);
    for (const auto* r : {&a, &b}) {
      if (r->holds) continue;
      ++violations;
      EXPECT_TRUE(verify_witness(*r->witness, d));
      bool inside = true;
      for (const auto& e : all_pairs(v))
        if (!s.contains(e)) inside = inside && r->witness->member.has_edge(e.u, e.v) == g.has_edge(e.u, e.v);
      EXPECT_TRUE(inside);
    }
  }
  EXPECT_GT(violations, 0);
}

TEST(Ball, LargerInstancesSearchMatchesEnumeration) {
  Philox4x32 rng(7, 7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = random_graph(11, 900 + trial);
    const auto s = sample_edit_subset(11, 6 + trial % 8, rng);
    const auto a = check_event_ball(g, s, 1, {BallStrategy::enumerate});
    const auto b = check_event_ball(g, s, 1, {BallStrategy::search});
    EXPECT_EQ(a.holds, b.holds) << trial;
  }
}

TEST(Ball, TupleReducesToDistinctAndSupersetIsMonotone) {
  const auto g = random_graph(10, 3);
  EditSet tuple(10, {{0, 1}, {2, 3}, {0, 1}}, EditMode::tuple);
  EditSet subset(10, {{0, 1}, {2, 3}}, EditMode::subset);
  EXPECT_EQ(check_event_ball(g, tuple, 1).holds, check_event_ball(g, subset, 1).holds);
  Philox4x32 rng(8, 8);
  for (int trial = 0; trial < 40; ++trial) {
    const auto h = random_graph(9, 70 + trial);
    const auto big = sample_edit_subset(9, 8, rng);
    std::vector<VertexPair> half(big.pairs().begin(), big.pairs().begin() + 4);
    const bool small_holds = check_event_ball(h, EditSet(9, half, EditMode::subset), 1).holds;
    if (check_event_ball(h, big, 1).holds) EXPECT_TRUE(small_holds);
  }
}

TEST(Ball, NodeBudgetYieldsLowerBound) {
  // a graph where E_1 survives a large ball needs many nodes to certify
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = random_graph(24, s);
    Philox4x32 rng(s, 1);
    const auto set = sample_edit_subset(24, 30, rng);
    BallOptions opt{BallStrategy::search};
    opt.node_budget = 5;
    const auto r = check_event_ball(g, set, 1, opt);
    if (r.holds) {
      EXPECT_EQ(r.exactness, Exactness::search_lower_bound);
      return;
    }
    EXPECT_TRUE(verify_witness(*r.witness, 1));
  }
  FAIL() << "no instance exhausted the budget";
}

TEST(Ball, EnumerationCap) {
  Philox4x32 rng(1, 0);
  const auto s = sample_edit_subset(12, 21, rng);
  EXPECT_THROW(check_event_ball(Graph(12), s, 1, {BallStrategy::enumerate}), ResourceError);
  EXPECT_THROW(check_event_ball(Graph(12), EditSet(11, {}, EditMode::subset), 1), InputError);
}

TEST(Radius, EnumerationSearchAndOracleAgree) {
  for (int trial = 0; trial < 24; ++trial) {
    const std::size_t v = 6;
    const std::size_t r = trial % 3;
    const std::size_t d = 1 + trial % 2;
    const auto g = random_graph(v, 50 + trial, 0.4);
    bool ref = true;
    for (const auto& m : oracle::radius_ball(g, r)) ref = ref && oracle::event_holds(m, d);
    const auto a = check_event_radius(g, r, d, {BallStrategy::enumerate});
    const auto b = check_event_radius(g, r, d, {BallStrategy::search});
    EXPECT_EQ(a.holds, ref) << trial;
    EXPECT_EQ(b.holds, ref) << trial;
    if (!b.holds) EXPECT_TRUE(verify_witness(*b.witness, d));
  }
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_graph(10, 300 + trial);
    const auto a = check_event_radius(g, 2, 1, {BallStrategy::enumerate});
    const auto b = check_event_radius(g, 2, 1, {BallStrategy::search});
    EXPECT_EQ(a.holds, b.holds) << trial;
    EXPECT_EQ(check_event_radius(g, 0, 1).holds, check_event(g, 1).holds);
  }
}

TEST(ExactProbability, DegenerateValues) {
  EXPECT_DOUBLE_EQ(exact_event_failure_probability(3, 1, EdgeProbabilities::constant(4, 1.0), 0, EditSampling::none),
                   1.0);
  EXPECT_DOUBLE_EQ(exact_event_failure_probability(1, 1, EdgeProbabilities::constant(2, 0.3), 1, EditSampling::tuple),
                   1.0);
  EXPECT_THROW(exact_event_failure_probability(5, 2, EdgeProbabilities::constant(7, 0.5), 0, EditSampling::none),
               ResourceError);
  EXPECT_THROW(exact_event_failure_probability(3, 1, EdgeProbabilities::constant(5, 0.5), 0, EditSampling::none),
               InputError);
}

TEST(ExactProbability, MatchesBruteForceSum) {
  // v = 4, δ = 1, heterogeneous p, tuple and subset edit sets of size 2
  std::vector<double> pv{0.1, 0.5, 0.7, 0.3, 0.9, 0.45};
  EdgeProbabilities p(4, pv);
  const auto pairs = all_pairs(4);
  double tuple_ref = 0, subset_ref = 0, none_ref = 0;
  for (std::uint64_t m = 0; m < 64; ++m) {
    const auto g = oracle::from_mask(4, m);
    double w = 1;
    for (std::size_t i = 0; i < 6; ++i) w *= (m >> i & 1) ? pv[i] : 1 - pv[i];
    if (!oracle::event_holds(g, 1)) none_ref += w;
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        std::vector<VertexPair> s{pairs[i]};
        if (j != i) s.push_back(pairs[j]);
        const bool fails = !oracle::ball_event_holds(g, s, 1);
        if (fails) tuple_ref += w / 36;
        if (fails && j != i) subset_ref += w / 30;
      }
  }
  EXPECT_NEAR(exact_event_failure_probability(3, 1, p, 2, EditSampling::tuple), tuple_ref, 1e-12);
  EXPECT_NEAR(exact_event_failure_probability(3, 1, p, 2, EditSampling::subset), subset_ref, 1e-12);
  EXPECT_NEAR(exact_event_failure_probability(3, 1, p, 0, EditSampling::none), none_ref, 1e-12);
  EXPECT_NEAR(exact_event_failure_probability(3, 1, p, 0, EditSampling::tuple), none_ref, 1e-12);
}
