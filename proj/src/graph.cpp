#include "cauto/graph.hpp"

#include <algorithm>
#include <queue>

#include "cauto/error.hpp"

namespace cauto {

LabeledGraph::LabeledGraph(std::size_t n_states, std::size_t n_symbols,
                           std::vector<StateId> delta)
    : n_states_(n_states), n_symbols_(n_symbols), delta_(std::move(delta)) {
  if (n_states_ == 0 || n_symbols_ == 0) throw InputError("graph needs states and symbols");
  if (delta_.size() != n_states_ * n_symbols_)
    throw InputError("transition table is not total");
  for (StateId t : delta_)
    if (t >= n_states_) throw InputError("transition target out of range");
}

LabeledGraph LabeledGraph::single_state(std::size_t n_symbols) {
  return LabeledGraph(1, n_symbols, std::vector<StateId>(n_symbols, 0));
}

StateId LabeledGraph::run(StateId q, std::span<const Symbol> word) const {
  for (Symbol s : word) q = next(q, s);
  return q;
}

bool LabeledGraph::strongly_connected() const {
  if (n_states_ == 0) return false;
  return strongly_connected_components(*this).size() == 1;
}

std::vector<std::vector<StateId>> strongly_connected_components(const LabeledGraph& g) {
  // Iterative Tarjan.
  const std::size_t n = g.n_states();
  const std::size_t k = g.n_symbols();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> components;
  std::size_t counter = 0;

  struct Frame {
    StateId v;
    std::size_t next_symbol;
  };
  std::vector<Frame> call;

  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next_symbol < k) {
        const StateId w = g.next(f.v, static_cast<Symbol>(f.next_symbol++));
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const StateId v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<StateId> comp;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }
  return components;
}

bool is_nontrivial_component(const LabeledGraph& g, const std::vector<StateId>& component) {
  if (component.size() > 1) return true;
  const StateId q = component.front();
  for (std::size_t s = 0; s < g.n_symbols(); ++s)
    if (g.next(q, static_cast<Symbol>(s)) == q) return true;
  return false;
}

bool is_closed_component(const LabeledGraph& g, const std::vector<StateId>& component) {
  for (StateId q : component)
    for (std::size_t s = 0; s < g.n_symbols(); ++s)
      if (!std::binary_search(component.begin(), component.end(),
                              g.next(q, static_cast<Symbol>(s))))
        return false;
  return true;
}

std::vector<StateId> reachable_states(const LabeledGraph& g, StateId start) {
  std::vector<bool> seen(g.n_states(), false);
  std::queue<StateId> frontier;
  frontier.push(start);
  seen[start] = true;
  while (!frontier.empty()) {
    const StateId q = frontier.front();
    frontier.pop();
    for (std::size_t s = 0; s < g.n_symbols(); ++s) {
      const StateId t = g.next(q, static_cast<Symbol>(s));
      if (!seen[t]) {
        seen[t] = true;
        frontier.push(t);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId q = 0; q < g.n_states(); ++q)
    if (seen[q]) out.push_back(q);
  return out;
}

}  // namespace cauto
