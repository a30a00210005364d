#include <gtest/gtest.h>

#include <random>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"
#include "cauto/error.hpp"
#include "cauto/graph.hpp"
#include "cauto/machine.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cauto;

namespace {

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
  for (const auto& x : v)
    if (x.kind == k) return true;
  return false;
}

}  // namespace

TEST(Alphabet, LabelsRoundTrip) {
  Alphabet a({"a", "b", "c"});
  EXPECT_EQ(a.size(), 3u);
  EXPECT_EQ(a.index_of("b"), 1);
  EXPECT_EQ(a.label(2), "c");
  EXPECT_FALSE(a.find("z").has_value());
  EXPECT_THROW(a.index_of("z"), InputError);
  EXPECT_TRUE(a.compact());
  EXPECT_FALSE(Alphabet({"up", "down"}).compact());
  EXPECT_FALSE(Alphabet::of_size(11).compact());
}

TEST(Alphabet, RejectsBadLabels) {
  EXPECT_THROW(Alphabet({"a", "a"}), InputError);
  EXPECT_THROW(Alphabet({""}), InputError);
  EXPECT_THROW(Alphabet({"a,b"}), InputError);
  EXPECT_THROW(Alphabet(std::vector<std::string>{}), InputError);
}

TEST(SymbolStream, ParseCompactAndSeparated) {
  const auto s = SymbolStream::parse(Alphabet::binary(), "0110");
  EXPECT_EQ(s.data(), (std::vector<Symbol>{0, 1, 1, 0}));
  EXPECT_EQ(s.to_string(), "0110");
  Alphabet words({"lo", "mid", "hi"});
  const auto t = SymbolStream::parse(words, "hi,lo,mid");
  EXPECT_EQ(t.data(), (std::vector<Symbol>{2, 0, 1}));
  EXPECT_EQ(t.to_string(), "hi,lo,mid");
  EXPECT_THROW(SymbolStream::parse(Alphabet::binary(), "012"), InputError);
  EXPECT_THROW(SymbolStream(Alphabet::binary(), {0, 2}), InputError);
}

TEST(Distribution, Entropy) {
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{0.5, 0.5}), 1.0);
  EXPECT_DOUBLE_EQ(entropy(std::vector<double>{1.0, 0.0}), 0.0);
  EXPECT_NEAR(entropy(std::vector<double>{0.8, 0.2}), 0.721928, 1e-6);
  const std::vector<double> d{0.1, 0.2, 0.3, 0.4};
  EXPECT_NEAR(entropy(d), oracle::entropy_bits(d), 1e-15);
}

TEST(Distribution, Helpers) {
  EXPECT_TRUE(is_distribution(std::vector<double>{0.25, 0.75}));
  EXPECT_FALSE(is_distribution(std::vector<double>{0.5, 0.4}));
  EXPECT_FALSE(is_distribution(std::vector<double>{1.5, -0.5}));
  EXPECT_DOUBLE_EQ(sup_distance(std::vector<double>{0.1, 0.9}, std::vector<double>{0.4, 0.6}), 0.3);
  std::vector<double> v{1.0, 3.0};
  EXPECT_TRUE(normalize(v));
  EXPECT_EQ(v, (std::vector<double>{0.25, 0.75}));
  std::vector<double> z{0.0, 0.0};
  EXPECT_FALSE(normalize(z));
  EXPECT_EQ(uniform(4), (std::vector<double>(4, 0.25)));
  const auto m = Matrix::from_rows({{0.5, 0.5}, {0.0, 1.0}});
  EXPECT_EQ(left_multiply(std::vector<double>{1.0, 0.0}, m), (std::vector<double>{0.5, 0.5}));
}

TEST(Graph, StrongComponentsMatchReachabilityOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 7, k = 1 + trial % 3;
    std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(n - 1));
    std::vector<StateId> delta(n * k);
    for (auto& t : delta) t = pick(rng);
    const LabeledGraph g(n, k, delta);
    const auto reach = oracle::reachability(g);
    const auto comps = strongly_connected_components(g);
    std::vector<int> comp_of(n, -1);
    std::size_t total = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      EXPECT_TRUE(std::is_sorted(comps[c].begin(), comps[c].end()));
      for (StateId q : comps[c]) comp_of[q] = static_cast<int>(c);
      total += comps[c].size();
    }
    ASSERT_EQ(total, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        EXPECT_EQ(comp_of[i] == comp_of[j], reach[i][j] && reach[j][i]);
    // Reverse topological order: arcs only point to earlier components.
    for (std::size_t q = 0; q < n; ++q)
      for (Symbol s = 0; s < k; ++s) EXPECT_LE(comp_of[g.next(q, s)], comp_of[q]);
    bool all = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) all = all && reach[i][j];
    EXPECT_EQ(g.strongly_connected(), all);
  }
}

TEST(Graph, ClosedAndNontrivialComponents) {
  // 0 -> 1 -> 2 <-> 3, state 1 has no self-loop.
  const LabeledGraph g(4, 2, {1, 1, 2, 2, 3, 3, 2, 2});
  const auto comps = strongly_connected_components(g);
  ASSERT_EQ(comps.size(), 3u);
  EXPECT_EQ(comps[0], (std::vector<StateId>{2, 3}));
  EXPECT_TRUE(is_closed_component(g, comps[0]));
  EXPECT_TRUE(is_nontrivial_component(g, comps[0]));
  EXPECT_FALSE(is_nontrivial_component(g, {1}));
  EXPECT_FALSE(is_closed_component(g, {1}));
  EXPECT_EQ(reachable_states(g, 1), (std::vector<StateId>{1, 2, 3}));
  EXPECT_EQ(g.run(0, std::vector<Symbol>{0, 1, 0}), 3u);
}

TEST(Machine, ValidateTwoStateMachine) {
  EXPECT_TRUE(validate_pfsa(fixtures::two_state_machine()).empty());
}

TEST(Machine, ValidateReportsViolations) {
  auto bad_row = fixtures::make_pfsa(2, {0, 0}, {{0.5, 0.4}});
  EXPECT_TRUE(has_kind(validate_pfsa(bad_row), Violation::Kind::RowStochastic));
  EXPECT_THROW(require_valid(bad_row), InputError);

  auto split = fixtures::make_pfsa(1, {0, 1}, {{1.0}, {1.0}});
  EXPECT_TRUE(has_kind(validate_pfsa(split), Violation::Kind::Connectivity));

  auto dangling = fixtures::make_pfsa(2, {0, 0}, {{0.5, 0.5}});
  dangling.graph.set_next(0, 1, 5);
  EXPECT_TRUE(has_kind(validate_pfsa(dangling), Violation::Kind::Totality));
  EXPECT_THROW(LabeledGraph(1, 2, {0, 5}), InputError);

  auto x = fixtures::unidirectional_cross_model();
  EXPECT_TRUE(validate_xpfsa(x).empty());
  x.out_morph(0, 0) = 0.7;
  EXPECT_TRUE(has_kind(validate_xpfsa(x), Violation::Kind::RowStochastic));
}

TEST(Machine, TransitionMatrix) {
  const auto m = transition_matrix(fixtures::two_state_machine());
  EXPECT_EQ(m, Matrix::from_rows({{0.85, 0.15}, {0.25, 0.75}}));
  EXPECT_EQ(transition_matrix(fixtures::bernoulli({0.3, 0.7})), Matrix::from_rows({{1.0}}));
}

TEST(Machine, StationaryDistributionExamples) {
  const auto p = stationary_distribution(fixtures::two_state_machine());
  EXPECT_NEAR(p[0], 0.625, 1e-9);
  EXPECT_NEAR(p[1], 0.375, 1e-9);
  EXPECT_EQ(stationary_distribution(fixtures::bernoulli({0.3, 0.7})), (Distribution{1.0}));
  const auto doubly = Matrix::from_rows({{0.2, 0.5, 0.3}, {0.5, 0.3, 0.2}, {0.3, 0.2, 0.5}});
  for (double v : stationary_distribution(doubly)) EXPECT_NEAR(v, 1.0 / 3.0, 1e-9);
  // Periodic chain: the plain power iteration would oscillate.
  const auto flip = Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  for (double v : stationary_distribution(flip)) EXPECT_NEAR(v, 0.5, 1e-9);
}

TEST(Machine, StationaryMatchesLinearSolveOracle) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    const auto g = fixtures::random_machine(rng, 1 + i % 4, 2 + i % 2);
    const auto m = transition_matrix(g);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      double row_sum = 0.0;
      for (double v : m.row(r)) row_sum += v;
      EXPECT_NEAR(row_sum, 1.0, 1e-9);
    }
    const auto p = stationary_distribution(m);
    const auto q = oracle::stationary(m);
    for (std::size_t j = 0; j < p.size(); ++j) EXPECT_NEAR(p[j], q[j], 1e-8);
  }
}

TEST(Machine, TransformationMatrix) {
  const auto g = fixtures::two_state_machine();
  EXPECT_EQ(transformation_matrix(g, 0), Matrix::from_rows({{0.85, 0.0}, {0.25, 0.0}}));
  EXPECT_EQ(transformation_matrix(g, 1), Matrix::from_rows({{0.0, 0.15}, {0.0, 0.75}}));
  EXPECT_THROW(transformation_matrix(g, 2), InputError);
  EXPECT_EQ(transformation_matrix(fixtures::bernoulli({0.3, 0.7}), 0), Matrix::from_rows({{0.3}}));
}

TEST(Machine, PropagateDistribution) {
  const auto g = fixtures::two_state_machine();
  const auto p = stationary_distribution(g);
  EXPECT_EQ(propagate_distribution(g, p, Word{}), p);
  const auto after0 = propagate_distribution(g, p, Word{0});
  EXPECT_DOUBLE_EQ(after0[0], 1.0);
  EXPECT_DOUBLE_EQ(after0[1], 0.0);

  const auto det = fixtures::make_pfsa(2, {0, 0}, {{1.0, 0.0}});
  EXPECT_THROW(propagate_distribution(det, Distribution{1.0}, Word{1}), ZeroProbabilityHistoryError);
  EXPECT_THROW(propagate_distribution(g, p, Word{3}), InputError);
}

TEST(Machine, PropagateComposes) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    const auto g = fixtures::random_machine(rng, 1 + i % 4, 2 + i % 2);
    const auto p = stationary_distribution(g);
    std::uniform_int_distribution<int> sym(0, static_cast<int>(g.alphabet.size()) - 1);
    Word x, y;
    for (int j = 0; j < 3; ++j) x.push_back(static_cast<Symbol>(sym(rng)));
    for (int j = 0; j < 4; ++j) y.push_back(static_cast<Symbol>(sym(rng)));
    Word xy = x;
    xy.insert(xy.end(), y.begin(), y.end());
    const auto whole = propagate_distribution(g, p, xy);
    const auto split = propagate_distribution(g, propagate_distribution(g, p, x), y);
    for (std::size_t j = 0; j < whole.size(); ++j) EXPECT_NEAR(whole[j], split[j], 1e-12);
  }
}

TEST(Machine, SampleStream) {
  const auto det = fixtures::make_pfsa(2, {0, 0}, {{1.0, 0.0}});
  const auto zeros = sample_stream(det, 50, 1);
  EXPECT_EQ(zeros.data(), std::vector<Symbol>(50, 0));

  const auto g = fixtures::two_state_machine();
  const auto a = sample_stream(g, 1'000'000, 42);
  EXPECT_EQ(a.data(), sample_stream(g, 1'000'000, 42).data());
  EXPECT_NE(a.data(), sample_stream(g, 1'000'000, 43).data());
  const auto after0 = oracle::successors(a.symbols(), a.symbols(), Word{0}, 2);
  EXPECT_NEAR(double(after0[0]) / double(after0[0] + after0[1]), 0.85, 0.01);
}

TEST(Machine, DistanceExamples) {
  const auto g = fixtures::two_state_machine();
  EXPECT_EQ(pfsa_distance(g, g, 5), 0.0);
  auto h = g;
  h.morph(1, 0) += 0.1;
  h.morph(1, 1) -= 0.1;
  EXPECT_GE(pfsa_distance(g, h, 1), 0.1 - 1e-9);
  EXPECT_THROW(pfsa_distance(g, fixtures::bernoulli({0.2, 0.3, 0.5}), 2), InputError);
}
