#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cauto/error.hpp"
#include "cauto/estimators.hpp"
#include "cauto/inference.hpp"

namespace cauto {

namespace {

std::uint64_t total(const std::vector<std::uint64_t>& counts) {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

Distribution to_distribution(const std::vector<std::uint64_t>& counts, std::uint64_t sum) {
  Distribution d(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    d[i] = static_cast<double>(counts[i]) / static_cast<double>(sum);
  return d;
}

// Nearest reference distribution in sup norm; ties to the lowest index.
std::pair<StateId, double> nearest(const std::vector<Distribution>& refs, const Distribution& d) {
  StateId best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (StateId q = 0; q < refs.size(); ++q) {
    const double dist = sup_distance(refs[q], d);
    if (dist < best_dist) {
      best = q;
      best_dist = dist;
    }
  }
  return {best, best_dist};
}

std::string describe(const Word& w) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
  os << ']';
  return os.str();
}

}  // namespace

void InferenceConfig::validate() const {
  if (!(epsilon > 0.0) || epsilon > 1.0) throw InputError("epsilon must lie in (0, 1]");
  if (max_states < 1) throw InputError("max_states must be at least 1");
}

std::size_t InferenceConfig::effective_depth(std::size_t input_alphabet_size) const {
  return depth > 0 ? depth : default_depth(input_alphabet_size, epsilon);
}

Word anchor_sync_word(const SuccessorOracle& oracle, std::size_t input_size,
                      const DerivativeHeap& heap, const Word& vertex, const InferenceConfig& cfg) {
  const HeapEntry* v = heap.find(vertex);
  if (v == nullptr) throw InputError("word " + describe(vertex) + " is not in the heap");
  const double tol = cfg.epsilon / 2;

  std::vector<const HeapEntry*> cands;
  for (const auto& e : heap.entries)
    if (e.count > v->count && sup_distance(e.dist, v->dist) <= tol) cands.push_back(&e);
  std::stable_sort(cands.begin(), cands.end(),
                   [](const HeapEntry* a, const HeapEntry* b) { return a->count > b->count; });

  std::vector<Word> tails;
  for (Symbol a = 0; a < input_size; ++a) {
    tails.push_back({a});
    for (Symbol b = 0; b < input_size; ++b) tails.push_back({a, b});
  }
  auto consistent = [&](const Word& w) {
    for (const auto& t : tails) {
      Word x = vertex, y = w;
      x.insert(x.end(), t.begin(), t.end());
      y.insert(y.end(), t.begin(), t.end());
      const auto cx = oracle(x), cy = oracle(y);
      const auto nx = total(cx), ny = total(cy);
      if (nx < cfg.n_min || ny < cfg.n_min) continue;
      // Three standard errors of a difference of two frequencies at p = 1/2.
      const double slack = 1.5 * std::sqrt(1.0 / double(nx) + 1.0 / double(ny));
      if (sup_distance(to_distribution(cx, nx), to_distribution(cy, ny)) > tol + slack) return false;
    }
    return true;
  };
  for (const auto* c : cands)
    if (consistent(c->word)) return c->word;
  return vertex;
}

StructureGraph grow_structure(const SuccessorOracle& oracle, std::size_t input_size,
                              const Word& sync_word, const InferenceConfig& cfg) {
  cfg.validate();
  const auto root_counts = oracle(sync_word);
  const std::uint64_t root_support = total(root_counts);
  if (root_support == 0 || root_support < cfg.n_min)
    throw InsufficientDataError("synchronizing word " + describe(sync_word) +
                                " lacks the minimum support");

  StructureGraph out;
  out.h.push_back(to_distribution(root_counts, root_support));
  out.ids.push_back(sync_word);
  out.support.push_back(root_support);
  std::vector<StateId> delta;

  for (StateId q = 0; q < out.h.size(); ++q) {
    for (std::size_t s = 0; s < input_size; ++s) {
      Word x = out.ids[q];
      x.push_back(static_cast<Symbol>(s));
      const auto counts = oracle(x);
      const std::uint64_t support = total(counts);
      if (support == 0) {
        delta.push_back(q);
        out.warnings.push_back("extension " + describe(x) + " never occurs; self-loop on state " +
                               std::to_string(q));
        continue;
      }
      auto d = to_distribution(counts, support);
      const auto [match, dist] = nearest(out.h, d);
      if (support < cfg.n_min) {
        delta.push_back(match);
        out.warnings.push_back("extension " + describe(x) + " has support " +
                               std::to_string(support) + "; routed to nearest state " +
                               std::to_string(match));
        continue;
      }
      if (dist <= cfg.epsilon) {
        delta.push_back(match);
        continue;
      }
      if (out.h.size() >= cfg.max_states)
        throw ModelExplosionError("state count exceeded max_states = " +
                                  std::to_string(cfg.max_states));
      delta.push_back(static_cast<StateId>(out.h.size()));
      out.h.push_back(std::move(d));
      out.ids.push_back(std::move(x));
      out.support.push_back(support);
    }
  }
  out.graph = LabeledGraph(out.h.size(), input_size, std::move(delta));
  return out;
}

StructureGraph derive_structure(const SymbolStream& s, const Word& sync_word,
                                const InferenceConfig& cfg) {
  const auto k = s.alphabet().size();
  for (Symbol v : sync_word)
    if (v >= k) throw InputError("synchronizing word symbol not in alphabet");
  auto oracle = [&s](std::span<const Symbol> x) {
    return cross_successor_counts(s, s, x);
  };
  return grow_structure(oracle, k, sync_word, cfg);
}

StructureGraph extract_strong_component(const StructureGraph& g, StateId sync_state) {
  const auto components = strongly_connected_components(g.graph);
  const std::vector<StateId>* best = nullptr;
  auto rank = [&](const std::vector<StateId>& c) {
    const bool nontrivial = is_nontrivial_component(g.graph, c);
    const bool has_sync = std::binary_search(c.begin(), c.end(), sync_state);
    return std::make_tuple(nontrivial, c.size(), has_sync);
  };
  for (const auto& c : components) {
    if (!best) {
      best = &c;
      continue;
    }
    const auto rc = rank(c), rb = rank(*best);
    if (rc > rb || (rc == rb && c.front() < best->front())) best = &c;
  }
  const auto& keep = *best;
  if (keep.size() == g.graph.n_states()) return g;

  std::vector<StateId> renumber(g.graph.n_states(), std::numeric_limits<StateId>::max());
  for (StateId i = 0; i < keep.size(); ++i) renumber[keep[i]] = i;

  StructureGraph out;
  std::vector<Distribution> kept_h;
  for (StateId q : keep) {
    kept_h.push_back(g.h[q]);
    out.ids.push_back(g.ids[q]);
    out.support.push_back(g.support[q]);
  }
  out.warnings = g.warnings;
  out.warnings.push_back("kept strong component of " + std::to_string(keep.size()) + " of " +
                         std::to_string(g.graph.n_states()) + " states");

  const std::size_t k = g.graph.n_symbols();
  std::vector<StateId> delta;
  delta.reserve(keep.size() * k);
  for (StateId q : keep) {
    for (std::size_t s = 0; s < k; ++s) {
      const StateId t = g.graph.next(q, static_cast<Symbol>(s));
      if (renumber[t] != std::numeric_limits<StateId>::max()) {
        delta.push_back(renumber[t]);
      } else {
        delta.push_back(nearest(kept_h, g.h[t]).first);
      }
    }
  }
  out.h = std::move(kept_h);
  out.graph = LabeledGraph(keep.size(), k, std::move(delta));
  return out;
}

ArcEstimate estimate_arc_probabilities(const LabeledGraph& g, const SymbolStream& s,
                                       std::span<const Distribution> fallback) {
  const std::size_t k = s.alphabet().size();
  if (g.n_symbols() != k) throw InputError("graph and stream alphabets differ");
  const std::size_t n = g.n_states();
  std::vector<std::uint64_t> counts(n * k, 0);
  StateId q = 0;
  for (Symbol v : s.symbols()) {
    ++counts[q * k + v];
    q = g.next(q, v);
  }
  ArcEstimate est;
  est.machine.alphabet = s.alphabet();
  est.machine.graph = g;
  est.machine.morph = Matrix(n, k);
  est.visits.assign(n, 0);
  for (StateId i = 0; i < n; ++i) {
    std::uint64_t row_total = 0;
    for (std::size_t j = 0; j < k; ++j) row_total += counts[i * k + j];
    est.visits[i] = row_total;
    if (row_total == 0) {
      const Distribution row = i < fallback.size() ? fallback[i] : uniform(k);
      for (std::size_t j = 0; j < k; ++j) est.machine.morph(i, j) = row[j];
      est.warnings.push_back("state " + std::to_string(i) + " never visited; row taken from " +
                             (i < fallback.size() ? "its reference distribution" : "uniform"));
      continue;
    }
    for (std::size_t j = 0; j < k; ++j)
      est.machine.morph(i, j) =
          static_cast<double>(counts[i * k + j]) / static_cast<double>(row_total);
  }
  return est;
}

SelfInferenceResult infer_pfsa_report(const SymbolStream& s, const InferenceConfig& cfg) {
  cfg.validate();
  if (s.size() < cfg.min_length || s.empty())
    throw InsufficientDataError("stream of length " + std::to_string(s.size()) +
                                " is shorter than the minimum " + std::to_string(cfg.min_length));
  const auto heap = build_heap(s, cfg.effective_depth(s.alphabet().size()), cfg.n_min);
  const SuccessorOracle oracle = [&s](std::span<const Symbol> x) { return cross_successor_counts(s, s, x); };
  Word x0 = anchor_sync_word(oracle, s.alphabet().size(), heap, hull_vertex_string(heap), cfg);
  auto structure = extract_strong_component(derive_structure(s, x0, cfg), 0);
  auto est = estimate_arc_probabilities(structure.graph, s, structure.h);

  SelfInferenceResult r;
  r.machine = std::move(est.machine);
  r.sync_word = std::move(x0);
  r.warnings = std::move(structure.warnings);
  r.warnings.insert(r.warnings.end(), est.warnings.begin(), est.warnings.end());
  return r;
}

Pfsa infer_pfsa(const SymbolStream& s, const InferenceConfig& cfg) {
  return infer_pfsa_report(s, cfg).machine;
}

}  // namespace cauto
