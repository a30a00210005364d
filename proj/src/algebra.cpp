#include "cauto/algebra.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "cauto/error.hpp"

namespace cauto {

namespace {

constexpr double kZeroWeight = 1e-12;

Symbol most_probable_symbol(const Pfsa& g, StateId q) {
  const auto row = g.morph.row(q);
  return static_cast<Symbol>(std::max_element(row.begin(), row.end()) - row.begin());
}

}  // namespace

ProductMachine synchronous_product(const Pfsa& g, const LabeledGraph& h) {
  const std::size_t k = g.alphabet.size();
  if (h.n_symbols() != k) throw InputError("alphabet mismatch between machine and graph");
  const std::size_t ng = g.n_states(), nh = h.n_states();

  const auto stat = stationary_distribution(g);
  const auto g0 = static_cast<StateId>(std::max_element(stat.begin(), stat.end()) - stat.begin());

  // Breadth-first enumeration of the pairs reachable from (g0, 0).
  constexpr auto kNone = std::numeric_limits<StateId>::max();
  std::vector<StateId> index(ng * nh, kNone);
  std::vector<std::pair<StateId, StateId>> pairs;
  std::queue<StateId> frontier;
  auto visit = [&](StateId a, StateId b) {
    auto& slot = index[a * nh + b];
    if (slot == kNone) {
      slot = static_cast<StateId>(pairs.size());
      pairs.emplace_back(a, b);
      frontier.push(slot);
    }
    return slot;
  };
  visit(g0, 0);
  std::vector<StateId> delta;
  while (!frontier.empty()) {
    const StateId p = frontier.front();
    frontier.pop();
    const auto [a, b] = pairs[p];
    if (delta.size() < (p + 1) * k) delta.resize((p + 1) * k);
    for (Symbol s = 0; s < k; ++s) delta[p * k + s] = visit(g.graph.next(a, s), h.next(b, s));
  }
  delta.resize(pairs.size() * k);
  const LabeledGraph full(pairs.size(), k, std::move(delta));

  const auto components = strongly_connected_components(full);
  std::vector<std::size_t> component_of(pairs.size());
  for (std::size_t c = 0; c < components.size(); ++c)
    for (StateId q : components[c]) component_of[q] = c;

  // Greedy most-probable walk from the start until a state repeats.
  std::vector<bool> seen(pairs.size(), false);
  StateId cur = 0;
  while (!seen[cur]) {
    seen[cur] = true;
    cur = full.next(cur, most_probable_symbol(g, pairs[cur].first));
  }
  const std::vector<StateId>* chosen = &components[component_of[cur]];
  if (!is_closed_component(full, *chosen)) {
    chosen = nullptr;
    for (const auto& c : components) {
      if (!is_closed_component(full, c)) continue;
      if (!chosen || c.size() > chosen->size() ||
          (c.size() == chosen->size() && c.front() < chosen->front()))
        chosen = &c;
    }
  }

  const auto& keep = *chosen;
  std::vector<StateId> renumber(pairs.size(), kNone);
  for (StateId i = 0; i < keep.size(); ++i) renumber[keep[i]] = i;

  ProductMachine out;
  out.machine.alphabet = g.alphabet;
  out.machine.morph = Matrix(keep.size(), k);
  std::vector<StateId> kept_delta;
  kept_delta.reserve(keep.size() * k);
  for (StateId i = 0; i < keep.size(); ++i) {
    const StateId p = keep[i];
    out.pairs.push_back(pairs[p]);
    for (Symbol s = 0; s < k; ++s) {
      kept_delta.push_back(renumber[full.next(p, s)]);
      out.machine.morph(i, s) = g.morph(pairs[p].first, s);
    }
  }
  out.machine.graph = LabeledGraph(keep.size(), k, std::move(kept_delta));
  return out;
}

Pfsa synchronous_composition(const Pfsa& g, const LabeledGraph& h) {
  return synchronous_product(g, h).machine;
}

namespace {

struct Marginal {
  std::vector<double> weight;  // per h state
  Matrix rows;                 // unnormalized: sum of weight * morph row
};

Marginal product_marginal(const Pfsa& g, const LabeledGraph& h) {
  const auto product = synchronous_product(g, h);
  const auto stat = stationary_distribution(product.machine);
  const std::size_t k = g.alphabet.size();
  Marginal m{std::vector<double>(h.n_states(), 0.0), Matrix(h.n_states(), k)};
  for (std::size_t i = 0; i < product.pairs.size(); ++i) {
    const StateId hq = product.pairs[i].second;
    m.weight[hq] += stat[i];
    for (std::size_t s = 0; s < k; ++s) m.rows(hq, s) += stat[i] * product.machine.morph(i, s);
  }
  return m;
}

}  // namespace

Projection project_onto(const Pfsa& g, const LabeledGraph& h) {
  if (!h.strongly_connected()) throw InputError("projection target graph must be strongly connected");
  const auto m = product_marginal(g, h);
  const std::size_t k = g.alphabet.size();
  const std::size_t nh = h.n_states();

  std::vector<StateId> kept;
  for (StateId q = 0; q < nh; ++q)
    if (m.weight[q] > kZeroWeight) kept.push_back(q);

  Projection out;
  out.h_states = kept;
  out.machine.alphabet = g.alphabet;
  out.machine.morph = Matrix(kept.size(), k);
  for (StateId i = 0; i < kept.size(); ++i)
    for (std::size_t s = 0; s < k; ++s)
      out.machine.morph(i, s) = m.rows(kept[i], s) / m.weight[kept[i]];

  constexpr auto kNone = std::numeric_limits<StateId>::max();
  std::vector<StateId> renumber(nh, kNone);
  for (StateId i = 0; i < kept.size(); ++i) renumber[kept[i]] = i;
  StateId heaviest = 0;
  for (StateId i = 1; i < kept.size(); ++i)
    if (m.weight[kept[i]] > m.weight[kept[heaviest]]) heaviest = i;
  if (kept.size() < nh)
    out.warnings.push_back(std::to_string(nh - kept.size()) +
                           " graph states carry no stationary weight and were pruned");

  std::vector<StateId> delta;
  delta.reserve(kept.size() * k);
  for (StateId q : kept)
    for (Symbol s = 0; s < k; ++s) {
      const StateId t = renumber[h.next(q, s)];
      delta.push_back(t == kNone ? heaviest : t);
    }
  out.machine.graph = LabeledGraph(kept.size(), k, std::move(delta));
  return out;
}

Pfsa projective_composition(const Pfsa& g, const LabeledGraph& h) {
  return project_onto(g, h).machine;
}

Distribution projected_distribution(const Pfsa& g, const LabeledGraph& h) {
  if (!h.strongly_connected()) throw InputError("projection target graph must be strongly connected");
  auto w = product_marginal(g, h).weight;
  normalize(w);
  return w;
}

Distribution stream_run(const LabeledGraph& g, std::span<const Symbol> s) {
  std::vector<double> visits(g.n_states(), 0.0);
  StateId q = 0;
  visits[q] = 1.0;
  for (Symbol v : s) {
    if (v >= g.n_symbols()) throw InputError("stream symbol not in graph alphabet");
    q = g.next(q, v);
    visits[q] += 1.0;
  }
  normalize(visits);
  return visits;
}

Distribution stream_run(const LabeledGraph& g, const SymbolStream& s) {
  if (s.alphabet().size() != g.n_symbols()) throw InputError("alphabet mismatch");
  return stream_run(g, s.symbols());
}

}  // namespace cauto
