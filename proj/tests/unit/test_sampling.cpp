#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "reconlab/error.hpp"
#include "reconlab/rng.hpp"
#include "reconlab/sampling.hpp"

using namespace reconlab;

TEST(Philox, KnownAnswerVectors) {
  using B = Philox4x32::Block;
  EXPECT_EQ(Philox4x32::block({0, 0, 0, 0}, {0, 0}), (B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, StreamsAreReproducibleAndDistinct) {
  Philox4x32 a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  for (int i = 0; i < 20; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    EXPECT_NE(x, d.next_u64());
  }
}

TEST(Philox, UniformBelowStaysInRangeAndCoversIt) {
  Philox4x32 r(1, 2);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto x = r.uniform_below(7);
    ASSERT_LT(x, 7u);
    ++hits[x];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_EQ(r.uniform_below(0), 0u);
  EXPECT_EQ(r.uniform_below(1), 0u);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.next_double();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(EdgeProbabilities, Validation) {
  EXPECT_THROW(EdgeProbabilities(4, {0.5, 0.5}), InputError);
  EXPECT_THROW(EdgeProbabilities(3, {0.5, 1.5, 0.1}), InputError);
  const auto p = EdgeProbabilities::constant(5, 0.25);
  EXPECT_EQ(p.size(), 10u);
  EXPECT_DOUBLE_EQ(p.at({1, 3}), 0.25);
}

TEST(EdgeProbabilities, BinaryAndJsonRoundTrip) {
  std::vector<double> v;
  for (int i = 0; i < 15; ++i) v.push_back(i / 16.0);
  EdgeProbabilities p(6, v);
  const auto path = std::filesystem::temp_directory_path() / "reconlab_probs_test.bin";
  write_probabilities_binary(path, p);
  EXPECT_EQ(std::filesystem::file_size(path), 8u + 8u + 15u * 8u);
  EXPECT_EQ(read_probabilities_binary(path), p);
  std::filesystem::remove(path);
  EXPECT_EQ(probabilities_from_json(probabilities_to_json(p)), p);
  EXPECT_THROW(probabilities_from_json("{\"n\":3,\"p\":[0.1]}"), InputError);
}

TEST(Beta, PresetsAndBox) {
  EXPECT_NEAR(beta_value(BetaPreset::log_over_n, 100), std::log(100.0) / 100, 1e-15);
  EXPECT_NEAR(beta_value(BetaPreset::inv_sqrt, 100), 0.1, 1e-15);
  EXPECT_EQ(beta_value(BetaPreset::constant, 100, 0.3), 0.3);
  EXPECT_EQ(parse_beta_preset("log"), BetaPreset::log_over_n);
  EXPECT_THROW(parse_beta_preset("nope"), InputError);
  const auto box = uniform_box_probabilities(10, 0.1, 2.0, BoxFill::constant);
  for (double x : box.values()) EXPECT_DOUBLE_EQ(x, 0.2);
  const auto rnd = uniform_box_probabilities(10, 0.1, 2.0, BoxFill::uniform, {5, 0});
  for (double x : rnd.values()) {
    EXPECT_GE(x, 0.2);
    EXPECT_LE(x, 0.8);
  }
  EXPECT_THROW(uniform_box_probabilities(10, 0.3, 2.0, BoxFill::constant), InputError);
}

TEST(Sampling, GraphIsPureGivenSeed) {
  const auto p = EdgeProbabilities::constant(30, 0.5);
  EXPECT_EQ(sample_graph(p, {9, 3}), sample_graph(p, {9, 3}));
  EXPECT_NE(sample_graph(p, {9, 3}), sample_graph(p, {9, 4}));
}

TEST(Sampling, EdgeFrequencyMatchesProbability) {
  const auto p = EdgeProbabilities::constant(40, 0.3);
  std::size_t edges = 0;
  for (std::uint64_t s = 0; s < 20; ++s) edges += sample_graph(p, {77, s}).edge_count();
  const double expect = 0.3 * 780 * 20;
  const double sd = std::sqrt(780 * 20 * 0.3 * 0.7);
  EXPECT_NEAR(static_cast<double>(edges), expect, 5 * sd);
  EXPECT_EQ(sample_graph(EdgeProbabilities::constant(8, 1.0), {1, 1}).edge_count(), 28u);
  EXPECT_EQ(sample_graph(EdgeProbabilities::constant(8, 0.0), {1, 1}).edge_count(), 0u);
}

TEST(Sampling, EditSets) {
  const auto t = sample_edit_tuple(6, 40, SeedSpec{3, 0});
  EXPECT_EQ(t.size(), 40u);
  EXPECT_EQ(t.mode(), EditMode::tuple);
  EXPECT_LE(t.distinct_count(), 15u);
  const auto s = sample_edit_subset(6, 15, SeedSpec{3, 0});
  EXPECT_EQ(s.distinct_count(), 15u);
  EXPECT_THROW(sample_edit_subset(6, 16, SeedSpec{3, 0}), InputError);
  Philox4x32 r(4, 4);
  std::set<Vertex> seen;
  const auto perm = sample_permutation(9, r);
  seen.insert(perm.begin(), perm.end());
  EXPECT_EQ(seen.size(), 9u);
  const auto sub = sample_vertex_subset(9, 4, r);
  EXPECT_EQ(sub.size(), 4u);
  EXPECT_TRUE(std::is_sorted(sub.begin(), sub.end()));
}

TEST(Sampling, SubsetIsUniformOverPairs) {
  // every pair equally likely to be selected: 3 of 10 pairs, 20000 draws
  std::vector<int> hits(10, 0);
  Philox4x32 r(11, 0);
  for (int i = 0; i < 20000; ++i) {
    const auto s = sample_edit_subset(5, 3, r);
    for (const auto& e : s.pairs()) ++hits[PairIndex::index_unchecked(e.u, e.v)];
  }
  const double expect = 20000 * 0.3;
  const double sd = std::sqrt(20000 * 0.3 * 0.7);
  for (int h : hits) EXPECT_NEAR(h, expect, 5 * sd);
}
