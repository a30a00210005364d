#pragma once

// Hand-built machines and random machine generators shared by the unit tests
// and the acceptance runner.

#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"
#include "cauto/graph.hpp"
#include "cauto/machine.hpp"

namespace fixtures {

using cauto::Alphabet;
using cauto::LabeledGraph;
using cauto::Matrix;
using cauto::Pfsa;
using cauto::StateId;
using cauto::Xpfsa;

inline Pfsa make_pfsa(std::size_t k, std::vector<StateId> delta,
                      std::vector<std::vector<double>> rows) {
  Pfsa p;
  p.alphabet = Alphabet::of_size(k);
  p.graph = LabeledGraph(rows.size(), k, std::move(delta));
  p.morph = Matrix::from_rows(rows);
  return p;
}

inline Xpfsa make_xpfsa(std::size_t k_in, std::size_t k_out, std::vector<StateId> delta,
                        std::vector<std::vector<double>> rows) {
  Xpfsa x;
  x.input_alphabet = Alphabet::of_size(k_in);
  x.output_alphabet = Alphabet::of_size(k_out);
  x.graph = LabeledGraph(rows.size(), k_in, std::move(delta));
  x.out_morph = Matrix::from_rows(rows);
  return x;
}

// Last symbol decides the state: delta(q, 0) = 0, delta(q, 1) = 1.
inline Pfsa two_state_machine() {
  return make_pfsa(2, {0, 1, 0, 1}, {{0.85, 0.15}, {0.25, 0.75}});
}

inline Pfsa bernoulli(std::vector<double> row) {
  const std::size_t k = row.size();
  return make_pfsa(k, std::vector<StateId>(k, 0), {std::move(row)});
}

// Ternary, last symbol decides the state.
inline Pfsa ternary_last_symbol(std::vector<std::vector<double>> rows) {
  return make_pfsa(3, {0, 1, 2, 0, 1, 2, 0, 1, 2}, std::move(rows));
}

// Binary, the last two symbols decide the state (state = 2 a + b).
inline Pfsa order_two(std::vector<std::vector<double>> rows) {
  std::vector<StateId> delta;
  for (StateId q = 0; q < 4; ++q)
    for (StateId c = 0; c < 2; ++c) delta.push_back(((q & 1) << 1) | c);
  return make_pfsa(2, std::move(delta), std::move(rows));
}

// Ground truth for the unidirectional coupled system: B is a fair coin, A
// copies B's previous symbol with probability 0.8.
inline Pfsa unidirectional_source_model() { return bernoulli({0.5, 0.5}); }

inline Xpfsa unidirectional_cross_model() {
  return make_xpfsa(2, 2, {0, 1, 0, 1}, {{0.8, 0.2}, {0.2, 0.8}});
}

// Some word maps every state to one state. Checked through the pair graph:
// every pair of states must be able to merge.
inline bool synchronizing(const LabeledGraph& g) {
  const std::size_t n = g.n_states(), k = g.n_symbols();
  std::vector<std::vector<bool>> merges(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) merges[i][i] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (merges[i][j]) continue;
        for (cauto::Symbol s = 0; s < k; ++s)
          if (merges[g.next(i, s)][g.next(j, s)]) {
            merges[i][j] = true;
            changed = true;
            break;
          }
      }
  }
  for (const auto& row : merges)
    for (bool m : row)
      if (!m) return false;
  return true;
}

inline std::vector<double> random_row(std::mt19937_64& rng, std::size_t k, double floor) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> row(k);
  double sum = 0.0;
  for (auto& v : row) sum += (v = u(rng));
  for (auto& v : row) v = floor + (1.0 - floor * k) * v / sum;
  return row;
}

inline LabeledGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  for (;;) {
    std::uniform_int_distribution<StateId> pick(0, static_cast<StateId>(n - 1));
    std::vector<StateId> delta(n * k);
    for (auto& t : delta) t = pick(rng);
    LabeledGraph g(n, k, std::move(delta));
    if (g.strongly_connected() && synchronizing(g)) return g;
  }
}

// Strongly connected, synchronizing, every row bounded away from zero.
inline Pfsa random_machine(std::mt19937_64& rng, std::size_t n, std::size_t k,
                           double floor = 0.05) {
  Pfsa p;
  p.alphabet = Alphabet::of_size(k);
  p.graph = random_graph(rng, n, k);
  p.morph = Matrix(n, k);
  for (std::size_t q = 0; q < n; ++q) {
    const auto row = random_row(rng, k, floor);
    for (std::size_t s = 0; s < k; ++s) p.morph(q, s) = row[s];
  }
  return p;
}

}  // namespace fixtures
