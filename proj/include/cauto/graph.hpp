#pragma once

#include <cstddef>
#include <vector>

#include "cauto/alphabet.hpp"

namespace cauto {

/// Deterministic symbol-labeled transition structure with a total transition
/// function, stored as a dense (state, symbol) -> state table.
class LabeledGraph {
 public:
  LabeledGraph() = default;
  LabeledGraph(std::size_t n_states, std::size_t n_symbols, std::vector<StateId> delta);

  static LabeledGraph single_state(std::size_t n_symbols);

  std::size_t n_states() const noexcept { return n_states_; }
  std::size_t n_symbols() const noexcept { return n_symbols_; }
  StateId next(StateId q, Symbol s) const { return delta_[q * n_symbols_ + s]; }
  void set_next(StateId q, Symbol s, StateId target) { delta_[q * n_symbols_ + s] = target; }
  const std::vector<StateId>& table() const noexcept { return delta_; }

  /// State reached from q after reading the whole word.
  StateId run(StateId q, std::span<const Symbol> word) const;

  bool strongly_connected() const;

  bool operator==(const LabeledGraph&) const = default;

 private:
  std::size_t n_states_ = 0;
  std::size_t n_symbols_ = 0;
  std::vector<StateId> delta_;
};

/// Strongly connected components (Tarjan), each listed in ascending state
/// order. Components are returned in reverse topological order: a component
/// appears before any component that has an arc into it.
std::vector<std::vector<StateId>> strongly_connected_components(const LabeledGraph& g);

/// A component is nontrivial when it contains a cycle (more than one state,
/// or a self-loop).
bool is_nontrivial_component(const LabeledGraph& g, const std::vector<StateId>& component);

/// No arc leaves the component.
bool is_closed_component(const LabeledGraph& g, const std::vector<StateId>& component);

/// States reachable from `start` (ascending order).
std::vector<StateId> reachable_states(const LabeledGraph& g, StateId start);

}  // namespace cauto
