#include <gtest/gtest.h>

#include <cmath>

#include "cauto/causality.hpp"
#include "cauto/coupled.hpp"
#include "cauto/error.hpp"
#include "cauto/machine.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cauto;

TEST(GammaAnalytic, Examples) {
  const Distribution half{0.5, 0.5};
  const auto two = fixtures::unidirectional_cross_model();
  const auto g = gamma_analytic(half, two, half);
  EXPECT_NEAR(g.value, 0.278072, 1e-6);
  EXPECT_NEAR(g.value, 1.0 - oracle::entropy_bits(std::vector<double>{0.8, 0.2}), 1e-15);
  EXPECT_TRUE(g.warnings.empty());

  const auto one = fixtures::make_xpfsa(2, 2, {0, 0}, {{0.3, 0.7}});
  EXPECT_NEAR(gamma_analytic(Distribution{0.3, 0.7}, one, Distribution{1.0}).value, 0.0, 1e-15);

  const auto det = fixtures::make_xpfsa(2, 2, {0, 1, 0, 1}, {{1.0, 0.0}, {0.0, 1.0}});
  EXPECT_DOUBLE_EQ(gamma_analytic(Distribution{0.4, 0.6}, det, half).value, 1.0);
}

TEST(GammaAnalytic, ClampsAndWarns) {
  // Output rows noisier than the base: raw value is negative.
  const auto one = fixtures::make_xpfsa(2, 2, {0, 0}, {{0.5, 0.5}});
  const auto g = gamma_analytic(Distribution{0.9, 0.1}, one, Distribution{1.0});
  EXPECT_LT(g.raw, 0.0);
  EXPECT_EQ(g.value, 0.0);
  EXPECT_EQ(g.warnings.size(), 1u);
}

TEST(GammaAnalytic, Errors) {
  const auto one = fixtures::make_xpfsa(2, 2, {0, 0}, {{0.5, 0.5}});
  EXPECT_THROW(gamma_analytic(Distribution{1.0, 0.0}, one, Distribution{1.0}), DegenerateProcessError);
  EXPECT_THROW(gamma_analytic(Distribution{0.5, 0.5}, one, Distribution{0.5, 0.5}), InputError);
  EXPECT_THROW(gamma_analytic(Distribution{1.0}, one, Distribution{1.0}), InputError);
}

TEST(GammaEmpirical, UnidirectionalSystem) {
  const auto [a, b] = simulate_coupled(CoupledSystemSpec::unidirectional_example(), 1'000'000, 1);
  const auto ba = gamma_empirical(b, a);
  EXPECT_NEAR(ba.gamma.value, 0.2781, 0.02);
  EXPECT_EQ(ba.model.machine.n_states(), 2u);
  EXPECT_TRUE(is_distribution(ba.occupancy));
  EXPECT_NEAR(ba.base[0], 0.5, 0.01);
  const auto ab = gamma_empirical(a, b);
  EXPECT_LE(ab.gamma.value, 0.02);
  EXPECT_GE(ab.gamma.raw, -1e-6);
}

TEST(GammaEmpirical, LaggedCopyIsFullyInformative) {
  // target[k + 1] = source[k]: the source's current symbol fixes the target's
  // next one.
  const auto s = sample_stream(fixtures::bernoulli({0.5, 0.5}), 100'001, 2);
  const SymbolStream source(Alphabet::binary(), {s.data().begin() + 1, s.data().end()});
  const SymbolStream target(Alphabet::binary(), {s.data().begin(), s.data().end() - 1});
  const auto g = gamma_empirical(source, target);
  EXPECT_NEAR(g.gamma.value, 1.0, 1e-9);
  EXPECT_EQ(g.model.machine.n_states(), 2u);
}

TEST(GammaEmpirical, SimultaneousCopyOfIidStreamCarriesNothing) {
  const auto s = sample_stream(fixtures::bernoulli({0.5, 0.5}), 200'000, 3);
  EXPECT_LE(gamma_empirical(s, s).gamma.value, 0.02);
}

TEST(GammaEmpirical, DegenerateTarget) {
  const auto a = sample_stream(fixtures::bernoulli({0.5, 0.5}), 5000, 3);
  const SymbolStream b(Alphabet::binary(), std::vector<Symbol>(5000, 1));
  EXPECT_THROW(gamma_empirical(a, b), DegenerateProcessError);
}

TEST(GammaErrorBound, Value) {
  const double eps = 0.05;
  const double expect = eps * std::log2(1.0 / eps) + (1 - eps) * std::log2(1.0 / (1 - eps));
  EXPECT_NEAR(gamma_error_bound(eps, 2, 1.0), expect, 1e-15);
  EXPECT_NEAR(gamma_error_bound(eps, 2, 1.0), 0.2864, 1e-4);
  EXPECT_NEAR(gamma_error_bound(eps, 3, 0.5), 2 * (eps * std::log2(2 / eps) + (1 - eps) * std::log2(1 / (1 - eps))), 1e-12);
  EXPECT_THROW(gamma_error_bound(eps, 1, 1.0), InputError);
  EXPECT_THROW(gamma_error_bound(eps, 2, 0.0), DegenerateProcessError);
}

TEST(Network, TwoStreamsGiveTwoArcs) {
  const auto [a, b] = simulate_coupled(CoupledSystemSpec::unidirectional_example(), 200'000, 4);
  const std::vector<NamedStream> streams = {{"a", a}, {"b", b}};
  const auto net = causality_network(streams);
  EXPECT_EQ(net.nodes, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(net.arcs.size(), 2u);
  EXPECT_EQ(net.arcs[0].from, 0u);
  EXPECT_EQ(net.arcs[0].to, 1u);
  EXPECT_LE(net.arcs[0].gamma, 0.02);
  EXPECT_NEAR(net.arcs[1].gamma, 0.2781, 0.02);
}

TEST(Network, CoupledPairPlusIndependentStream) {
  const auto [a, b] = simulate_coupled(CoupledSystemSpec::unidirectional_example(), 1'000'000, 5);
  const auto c = sample_stream(fixtures::two_state_machine(), 1'000'000, 6);
  const std::vector<NamedStream> streams = {{"a", a}, {"b", b}, {"c", c}};
  const auto net = causality_network(streams);
  ASSERT_EQ(net.arcs.size(), 6u);
  int strong = 0;
  for (const auto& arc : net.arcs) {
    EXPECT_GE(arc.gamma, 0.0);
    EXPECT_LE(arc.gamma, 1.0);
    if (arc.from == 1 && arc.to == 0) {
      EXPECT_NEAR(arc.gamma, 0.2781, 0.02);
      ++strong;
    } else {
      EXPECT_LE(arc.gamma, 0.02) << arc.from << "->" << arc.to;
    }
  }
  EXPECT_EQ(strong, 1);
}

TEST(Network, SerialAndParallelAgree) {
  std::vector<NamedStream> streams;
  for (int i = 0; i < 4; ++i)
    streams.push_back({"s" + std::to_string(i),
                       sample_stream(fixtures::two_state_machine(), 20'000, 30 + i)});
  streams.push_back({"s4", sample_stream(fixtures::two_state_machine(), 20'000, 40)});
  const auto par = causality_network(streams, {}, {.parallel = true});
  const auto ser = causality_network(streams, {}, {.parallel = false});
  ASSERT_EQ(par.arcs.size(), ser.arcs.size());
  for (std::size_t i = 0; i < par.arcs.size(); ++i) {
    EXPECT_EQ(par.arcs[i].from, ser.arcs[i].from);
    EXPECT_EQ(par.arcs[i].gamma, ser.arcs[i].gamma);
  }
}

TEST(Network, FailingPairsBecomeMissingArcs) {
  const auto a = sample_stream(fixtures::bernoulli({0.5, 0.5}), 5000, 7);
  const SymbolStream flat(Alphabet::binary(), std::vector<Symbol>(5000, 0));
  const auto b = sample_stream(fixtures::bernoulli({0.5, 0.5}), 4000, 8);
  const std::vector<NamedStream> streams = {{"a", a}, {"flat", flat}, {"b", b}};
  const auto net = causality_network(streams, {}, {.self_models = true});
  EXPECT_EQ(net.arcs.size() + net.missing.size(), 6u);
  bool saw_degenerate = false, saw_alignment = false;
  for (const auto& m : net.missing) {
    saw_degenerate = saw_degenerate || m.kind == "degenerate-process";
    saw_alignment = saw_alignment || m.kind == "alignment";
  }
  EXPECT_TRUE(saw_degenerate);
  EXPECT_TRUE(saw_alignment);
  ASSERT_EQ(net.self_models.size(), 3u);
  EXPECT_TRUE(net.self_models[0].has_value());
  EXPECT_THROW(causality_network(std::span<const NamedStream>(streams.data(), 1)), InputError);
}

TEST(PredictNext, GroundTruthModels) {
  const auto self = fixtures::unidirectional_source_model();
  const auto cross = fixtures::unidirectional_cross_model();
  const auto t0 = predict_next(self, cross, Word{0});
  EXPECT_NEAR(t0[0], 0.8, 1e-12);
  EXPECT_NEAR(t0[1], 0.2, 1e-12);
  const auto t1 = predict_next(self, cross, Word{1, 1, 0, 1});
  EXPECT_NEAR(t1[0], 0.2, 1e-12);
  // Empty history: occupancy-weighted average of the output rows.
  const auto empty = predict_next(self, cross, Word{});
  EXPECT_NEAR(empty[0], 0.5, 1e-12);
}

TEST(PredictNext, SingleStateCrossModelIgnoresHistory) {
  const auto cross = fixtures::make_xpfsa(2, 3, {0, 0}, {{0.2, 0.3, 0.5}});
  const auto self = fixtures::two_state_machine();
  for (const auto& h : {Word{}, Word{0}, Word{1, 1, 0}})
    EXPECT_EQ(predict_next(self, cross, h), (Distribution{0.2, 0.3, 0.5}));
}

TEST(PredictNext, Errors) {
  const auto cross = fixtures::unidirectional_cross_model();
  EXPECT_THROW(predict_next(fixtures::bernoulli({0.2, 0.3, 0.5}), cross, Word{}), InputError);
  const auto never_one = fixtures::bernoulli({1.0, 0.0});
  EXPECT_THROW(predict_next(never_one, cross, Word{1}), ZeroProbabilityHistoryError);
}

TEST(FusePredictions, HandComputedWeights) {
  const std::vector<Distribution> taus = {{1.0, 0.0}, {0.0, 1.0}};
  const std::vector<double> gammas = {0.3, 0.1};
  const auto r = fuse_predictions(taus, gammas);
  EXPECT_EQ(r.weights, (std::vector<double>{0.3 / 0.4, 0.1 / 0.4}));
  EXPECT_DOUBLE_EQ(r.fused[0], 0.75);
  EXPECT_DOUBLE_EQ(r.fused[1], 0.25);
  EXPECT_TRUE(is_distribution(r.fused));
}

TEST(FusePredictions, DegenerateCases) {
  const std::vector<Distribution> one = {{0.1, 0.9}};
  EXPECT_EQ(fuse_predictions(one, std::vector<double>{0.4}).fused, one[0]);

  const Distribution odd{1.0 / 3.0, 1.0 - 1.0 / 3.0};
  const std::vector<Distribution> same = {odd, odd, odd};
  EXPECT_EQ(fuse_predictions(same, std::vector<double>{0.1, 0.7, 0.13}).fused, odd);

  const std::vector<Distribution> two = {{1.0, 0.0}, {0.0, 1.0}};
  const auto zero = fuse_predictions(two, std::vector<double>{0.0, 0.0});
  EXPECT_EQ(zero.fused, (Distribution{0.5, 0.5}));
  EXPECT_TRUE(zero.weights.empty());
  EXPECT_EQ(fuse_predictions(two, std::vector<double>{0.0, 0.0}, Distribution{0.9, 0.1}).fused,
            (Distribution{0.9, 0.1}));

  EXPECT_THROW(fuse_predictions(two, std::vector<double>{0.5}), InputError);
  EXPECT_THROW(fuse_predictions(two, std::vector<double>{0.5, -0.1}), InputError);
}
