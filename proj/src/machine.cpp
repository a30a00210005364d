#include "cauto/machine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cauto/error.hpp"
#include "cauto/rng.hpp"

namespace cauto {

namespace {

constexpr double kStationaryTolerance = 1e-10;
// Iteration continues past the tolerance while the residual keeps shrinking,
// down to this floor.
constexpr double kStationaryTarget = 1e-15;
constexpr std::size_t kStationaryIterationCap = 1'000'000;

// States lying in a closed class of the chain's support graph. All others are
// transient and carry no stationary mass.
std::vector<bool> recurrent_states(const Matrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) > 0.0) {
        out[i].push_back(j);
        in[j].push_back(i);
      }
  // Kosaraju: finishing order on the graph, then components on the reverse.
  std::vector<std::size_t> order;
  std::vector<bool> seen(n, false);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < out[v].size()) {
        const std::size_t w = out[v][next++];
        if (!seen[w]) {
          seen[w] = true;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }
  constexpr auto kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> comp(n, kNone);
  std::size_t n_comp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != kNone) continue;
    std::vector<std::size_t> stack{*it};
    comp[*it] = n_comp;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : in[v])
        if (comp[w] == kNone) {
          comp[w] = n_comp;
          stack.push_back(w);
        }
    }
    ++n_comp;
  }
  std::vector<bool> closed(n_comp, true);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : out[i])
      if (comp[j] != comp[i]) closed[comp[i]] = false;
  std::vector<bool> rec(n);
  for (std::size_t i = 0; i < n; ++i) rec[i] = closed[comp[i]];
  return rec;
}

void check_shape(std::vector<Violation>& out, const LabeledGraph& g, const Matrix& morph,
                 std::size_t in_size, std::size_t out_size) {
  if (g.n_states() == 0) {
    out.push_back({Violation::Kind::Shape, "machine has no states"});
    return;
  }
  if (g.n_symbols() != in_size || g.table().size() != g.n_states() * in_size)
    out.push_back({Violation::Kind::Totality,
                   "transition table does not cover every (state, symbol)"});
  else if (std::any_of(g.table().begin(), g.table().end(),
                       [&](StateId t) { return t >= g.n_states(); }))
    out.push_back({Violation::Kind::Totality, "transition target out of range"});
  if (morph.rows() != g.n_states() || morph.cols() != out_size)
    out.push_back({Violation::Kind::Shape, "morph matrix shape does not match machine"});
}

void check_rows(std::vector<Violation>& out, const Matrix& morph) {
  for (std::size_t q = 0; q < morph.rows(); ++q) {
    if (!is_distribution(morph.row(q))) {
      std::ostringstream msg;
      double sum = 0.0;
      for (double v : morph.row(q)) sum += v;
      msg << "morph row " << q << " is not a distribution (sum " << sum << ")";
      out.push_back({Violation::Kind::RowStochastic, msg.str()});
    }
  }
}

void check_connectivity(std::vector<Violation>& out, const LabeledGraph& g) {
  if (g.n_states() > 0 && !g.strongly_connected())
    out.push_back({Violation::Kind::Connectivity, "graph is not strongly connected"});
}

[[noreturn]] void throw_violations(const std::vector<Violation>& v) {
  std::string msg = "invalid machine:";
  for (const auto& e : v) msg += " " + e.detail + ";";
  throw InputError(msg);
}

}  // namespace

std::vector<Violation> validate_pfsa(const Pfsa& p) {
  std::vector<Violation> out;
  check_shape(out, p.graph, p.morph, p.alphabet.size(), p.alphabet.size());
  if (!out.empty()) return out;
  check_rows(out, p.morph);
  check_connectivity(out, p.graph);
  return out;
}

std::vector<Violation> validate_xpfsa(const Xpfsa& x) {
  std::vector<Violation> out;
  check_shape(out, x.graph, x.out_morph, x.input_alphabet.size(), x.output_alphabet.size());
  if (!out.empty()) return out;
  check_rows(out, x.out_morph);
  check_connectivity(out, x.graph);
  return out;
}

void require_valid(const Pfsa& p) {
  if (auto v = validate_pfsa(p); !v.empty()) throw_violations(v);
}

void require_valid(const Xpfsa& x) {
  if (auto v = validate_xpfsa(x); !v.empty()) throw_violations(v);
}

Matrix transition_matrix(const Pfsa& p) {
  const std::size_t n = p.n_states();
  Matrix m(n, n);
  for (StateId q = 0; q < n; ++q)
    for (Symbol s = 0; s < p.alphabet.size(); ++s) m(q, p.graph.next(q, s)) += p.morph(q, s);
  return m;
}

Distribution stationary_distribution(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0 || m.cols() != n) throw InputError("stationary distribution needs a square matrix");
  const auto recurrent = recurrent_states(m);
  Distribution p = uniform(n);
  double last_residual = INFINITY;
  for (std::size_t it = 0; it < kStationaryIterationCap; ++it) {
    const auto next = left_multiply(p, m);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(next[i] - p[i]));
    if (residual <= kStationaryTarget ||
        (residual <= kStationaryTolerance && residual >= last_residual)) {
      for (std::size_t i = 0; i < n; ++i)
        if (!recurrent[i]) p[i] = 0.0;
      normalize(p);
      return p;
    }
    last_residual = residual;
    for (std::size_t i = 0; i < n; ++i) p[i] = 0.5 * (p[i] + next[i]);
  }
  throw ConvergenceError("stationary distribution did not converge; machine may be degenerate");
}

Distribution stationary_distribution(const Pfsa& p) {
  return stationary_distribution(transition_matrix(p));
}

Matrix transformation_matrix(const Pfsa& p, Symbol s) {
  if (s >= p.alphabet.size()) throw InputError("symbol not in alphabet");
  const std::size_t n = p.n_states();
  Matrix g(n, n);
  for (StateId q = 0; q < n; ++q) g(q, p.graph.next(q, s)) = p.morph(q, s);
  return g;
}

Distribution propagate_distribution(const Pfsa& p, std::span<const double> start,
                                    std::span<const Symbol> word) {
  const std::size_t n = p.n_states();
  if (start.size() != n) throw InputError("state distribution has wrong size");
  Distribution cur(start.begin(), start.end());
  Distribution next(n);
  for (Symbol s : word) {
    if (s >= p.alphabet.size()) throw InputError("symbol not in alphabet");
    std::fill(next.begin(), next.end(), 0.0);
    for (StateId q = 0; q < n; ++q)
      if (cur[q] != 0.0) next[p.graph.next(q, s)] += cur[q] * p.morph(q, s);
    if (!normalize(next))
      throw ZeroProbabilityHistoryError("history has zero probability under the machine");
    cur.swap(next);
  }
  return cur;
}

Distribution propagate_distribution(const Pfsa& p, std::span<const double> start,
                                    const SymbolStream& word) {
  if (!(word.alphabet() == p.alphabet)) throw InputError("alphabet mismatch");
  return propagate_distribution(p, start, word.symbols());
}

SymbolStream sample_stream(const Pfsa& p, std::size_t length, std::uint64_t seed) {
  const auto stat = stationary_distribution(p);
  StateId q = static_cast<StateId>(std::max_element(stat.begin(), stat.end()) - stat.begin());
  std::mt19937_64 rng(seed);
  std::vector<Symbol> out(length);
  for (std::size_t i = 0; i < length; ++i) {
    const auto s = static_cast<Symbol>(draw_index(rng, p.morph.row(q)));
    out[i] = s;
    q = p.graph.next(q, s);
  }
  return SymbolStream(p.alphabet, std::move(out));
}

namespace {

struct DistanceWalk {
  const Pfsa& a;
  const Pfsa& b;
  std::size_t depth;
  double best = 0.0;

  void visit(const Distribution& pa, const Distribution& pb, std::size_t level) {
    const auto fa = left_multiply(pa, a.morph);
    const auto fb = left_multiply(pb, b.morph);
    best = std::max(best, sup_distance(fa, fb));
    if (level == depth) return;
    for (Symbol s = 0; s < a.alphabet.size(); ++s) {
      if (fa[s] <= 0.0 || fb[s] <= 0.0) continue;
      visit(propagate_distribution(a, pa, std::span<const Symbol>(&s, 1)),
            propagate_distribution(b, pb, std::span<const Symbol>(&s, 1)), level + 1);
    }
  }
};

}  // namespace

double pfsa_distance(const Pfsa& a, const Pfsa& b, std::size_t depth) {
  if (!(a.alphabet == b.alphabet)) throw InputError("alphabet mismatch");
  const double nodes = std::pow(static_cast<double>(a.alphabet.size()), static_cast<double>(depth));
  if (nodes > 5e7) throw InputError("distance depth too large for this alphabet");
  DistanceWalk walk{a, b, depth};
  walk.visit(stationary_distribution(a), stationary_distribution(b), 0);
  return walk.best;
}

}  // namespace cauto
