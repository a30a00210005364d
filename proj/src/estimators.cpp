#include "cauto/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "cauto/error.hpp"
#include "cauto/kernels.hpp"

namespace cauto {

namespace {

void check_word(std::span<const Symbol> x, std::size_t k) {
  for (Symbol s : x)
    if (s >= k) throw InputError("word symbol not in alphabet");
}

void check_aligned(const SymbolStream& sa, const SymbolStream& sb) {
  if (sa.size() != sb.size())
    throw AlignmentError("streams are not aligned: lengths " + std::to_string(sa.size()) +
                         " and " + std::to_string(sb.size()));
}

Derivative to_derivative(const std::vector<std::uint64_t>& successors) {
  Derivative d;
  d.support = std::accumulate(successors.begin(), successors.end(), std::uint64_t{0});
  if (d.support == 0) throw NoOccurrenceError("word is never followed by a symbol");
  d.dist.resize(successors.size());
  for (std::size_t i = 0; i < successors.size(); ++i)
    d.dist[i] = static_cast<double>(successors[i]) / static_cast<double>(d.support);
  return d;
}

Word decode(std::uint64_t code, std::size_t length, std::size_t base) {
  Word w(length);
  for (std::size_t i = length; i-- > 0;) {
    w[i] = static_cast<Symbol>(code % base);
    code /= base;
  }
  return w;
}

DerivativeHeap heap_from_table(const kernels::SuccessorTable& table, std::uint64_t n_min) {
  DerivativeHeap heap;
  heap.depth = table.depth;
  heap.n_min = n_min;
  heap.output_size = table.out_size;
  const std::uint64_t threshold = std::max<std::uint64_t>(n_min, 1);
  std::uint64_t words = 1;
  for (std::size_t l = 0; l <= table.depth; ++l, words *= table.in_size) {
    for (std::uint64_t code = 0; code < words; ++code) {
      const auto row = table.row(l, code);
      const std::uint64_t support = std::accumulate(row.begin(), row.end(), std::uint64_t{0});
      if (support < threshold) continue;
      HeapEntry e;
      e.word = decode(code, l, table.in_size);
      e.count = support;
      e.dist.resize(row.size());
      for (std::size_t i = 0; i < row.size(); ++i)
        e.dist[i] = static_cast<double>(row[i]) / static_cast<double>(support);
      heap.entries.push_back(std::move(e));
    }
  }
  if (heap.entries.empty())
    throw InsufficientDataError("no word reaches the minimum support of " +
                                std::to_string(n_min) + "; stream too short");
  return heap;
}

// Among candidate indices (already in shortlex order) pick lowest entropy,
// ties to the earliest.
std::size_t lowest_entropy(const DerivativeHeap& heap, const std::vector<std::size_t>& cands) {
  std::size_t best = cands.front();
  double best_h = entropy(heap.entries[best].dist);
  for (std::size_t c : cands) {
    const double h = entropy(heap.entries[c].dist);
    if (h < best_h || (h == best_h && shortlex_less(heap.entries[c].word, heap.entries[best].word))) {
      best = c;
      best_h = h;
    }
  }
  return best;
}

std::size_t argmax_coordinate(const DerivativeHeap& heap, std::size_t coord, bool maximize) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < heap.entries.size(); ++i) {
    const double v = heap.entries[i].dist[coord], b = heap.entries[best].dist[coord];
    if (maximize ? v > b : v < b) best = i;
  }
  return best;
}

struct Point {
  double x, y;
  std::size_t entry;
};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Strict hull vertices (collinear points dropped) of distinct points.
std::vector<std::size_t> planar_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  if (pts.size() <= 2) {
    std::vector<std::size_t> out;
    for (const auto& p : pts) out.push_back(p.entry);
    return out;
  }
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  std::vector<std::size_t> out;
  for (const auto& p : hull) out.push_back(p.entry);
  return out;
}

}  // namespace

bool shortlex_less(std::span<const Symbol> a, std::span<const Symbol> b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::uint64_t symbolic_count(const SymbolStream& s, std::span<const Symbol> x) {
  check_word(x, s.alphabet().size());
  return kernels::pattern_counts_parallel(s.symbols(), s.symbols(), x, s.alphabet().size())
      .occurrences;
}

std::uint64_t symbolic_count(const SymbolStream& s, const SymbolStream& x) {
  if (!(s.alphabet() == x.alphabet())) throw InputError("alphabet mismatch");
  return symbolic_count(s, x.symbols());
}

Derivative symbolic_derivative(const SymbolStream& s, std::span<const Symbol> x) {
  check_word(x, s.alphabet().size());
  return to_derivative(
      kernels::pattern_counts_parallel(s.symbols(), s.symbols(), x, s.alphabet().size())
          .successors);
}

Derivative symbolic_derivative(const SymbolStream& s, const SymbolStream& x) {
  if (!(s.alphabet() == x.alphabet())) throw InputError("alphabet mismatch");
  return symbolic_derivative(s, x.symbols());
}

std::vector<std::uint64_t> cross_successor_counts(const SymbolStream& sa,
                                                  const SymbolStream& sb,
                                                  std::span<const Symbol> x) {
  check_aligned(sa, sb);
  check_word(x, sa.alphabet().size());
  return kernels::pattern_counts_parallel(sa.symbols(), sb.symbols(), x, sb.alphabet().size())
      .successors;
}

std::uint64_t cross_count(const SymbolStream& sa, const SymbolStream& sb,
                          std::span<const Symbol> x, Symbol sigma) {
  if (sigma >= sb.alphabet().size()) throw InputError("output symbol not in alphabet");
  return cross_successor_counts(sa, sb, x)[sigma];
}

Derivative cross_derivative(const SymbolStream& sa, const SymbolStream& sb,
                            std::span<const Symbol> x) {
  return to_derivative(cross_successor_counts(sa, sb, x));
}

const HeapEntry* DerivativeHeap::find(std::span<const Symbol> word) const {
  for (const auto& e : entries)
    if (std::equal(e.word.begin(), e.word.end(), word.begin(), word.end())) return &e;
  return nullptr;
}

std::size_t default_depth(std::size_t alphabet_size, double epsilon) {
  if (alphabet_size < 2 || !(epsilon > 0.0) || epsilon >= 1.0) return 1;
  const double l = std::log(1.0 / epsilon) / std::log(static_cast<double>(alphabet_size));
  // Guard against log round-off pushing an exact integer up by one.
  const auto d = static_cast<std::size_t>(std::ceil(l - 1e-12));
  return std::max<std::size_t>(d, 1);
}

DerivativeHeap build_heap(const SymbolStream& s, std::size_t depth, std::uint64_t n_min) {
  if (s.empty()) throw InsufficientDataError("empty stream");
  const auto k = s.alphabet().size();
  return heap_from_table(kernels::successor_counts_parallel(s.symbols(), s.symbols(), k, k, depth),
                         n_min);
}

DerivativeHeap build_cross_heap(const SymbolStream& sa, const SymbolStream& sb,
                                std::size_t depth, std::uint64_t n_min) {
  check_aligned(sa, sb);
  if (sa.empty()) throw InsufficientDataError("empty stream");
  return heap_from_table(
      kernels::successor_counts_parallel(sa.symbols(), sb.symbols(), sa.alphabet().size(),
                                         sb.alphabet().size(), depth),
      n_min);
}

Word hull_vertex_string(const DerivativeHeap& heap) {
  if (heap.entries.empty()) throw InsufficientDataError("empty derivative heap");
  const std::size_t k = heap.output_size;
  std::vector<std::size_t> candidates;
  if (k <= 1) {
    candidates.push_back(0);
  } else if (k == 2) {
    candidates.push_back(argmax_coordinate(heap, 0, true));
    candidates.push_back(argmax_coordinate(heap, 0, false));
  } else if (k == 3) {
    // One representative (the shortlex-first entry) per distinct point.
    std::map<std::pair<double, double>, std::size_t> first_at;
    for (std::size_t i = 0; i < heap.entries.size(); ++i)
      first_at.try_emplace({heap.entries[i].dist[0], heap.entries[i].dist[1]}, i);
    std::vector<Point> pts;
    for (const auto& [xy, i] : first_at) pts.push_back({xy.first, xy.second, i});
    candidates = planar_hull(std::move(pts));
    std::sort(candidates.begin(), candidates.end());
  } else {
    for (std::size_t c = 0; c < k; ++c) candidates.push_back(argmax_coordinate(heap, c, true));
  }
  return heap.entries[lowest_entropy(heap, candidates)].word;
}

}  // namespace cauto
