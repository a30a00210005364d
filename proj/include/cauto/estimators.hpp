#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"

namespace cauto {

/// Empirical next-symbol distribution and the number of occurrences that had
/// a successor.
struct Derivative {
  Distribution dist;
  std::uint64_t support = 0;
};

/// Overlapping occurrences of x in s. The empty word occurs |s| times.
std::uint64_t symbolic_count(const SymbolStream& s, std::span<const Symbol> x);
std::uint64_t symbolic_count(const SymbolStream& s, const SymbolStream& x);

/// Throws NoOccurrenceError if x is never followed by a symbol.
Derivative symbolic_derivative(const SymbolStream& s, std::span<const Symbol> x);
Derivative symbolic_derivative(const SymbolStream& s, const SymbolStream& x);

/// Positions k where x ends at sa[k] and sb[k + 1] = sigma. sa and sb must be
/// aligned (equal length), else AlignmentError.
std::uint64_t cross_count(const SymbolStream& sa, const SymbolStream& sb,
                          std::span<const Symbol> x, Symbol sigma);

Derivative cross_derivative(const SymbolStream& sa, const SymbolStream& sb,
                            std::span<const Symbol> x);

/// Raw successor counts without the zero-support check. Used by inference.
std::vector<std::uint64_t> cross_successor_counts(const SymbolStream& sa,
                                                  const SymbolStream& sb,
                                                  std::span<const Symbol> x);

struct HeapEntry {
  Word word;
  Distribution dist;
  std::uint64_t count = 0;
};

/// Derivatives of every word of length <= depth with support >= n_min.
/// Entries are ordered by length, then lexicographically.
struct DerivativeHeap {
  std::size_t depth = 0;
  std::uint64_t n_min = 0;
  std::size_t output_size = 0;
  std::vector<HeapEntry> entries;

  const HeapEntry* find(std::span<const Symbol> word) const;
};

inline constexpr std::uint64_t kDefaultMinSupport = 50;

/// ceil(log_k(1 / epsilon)), at least 1.
std::size_t default_depth(std::size_t alphabet_size, double epsilon);

/// Throws InsufficientDataError if no word reaches n_min.
DerivativeHeap build_heap(const SymbolStream& s, std::size_t depth,
                          std::uint64_t n_min = kDefaultMinSupport);
DerivativeHeap build_cross_heap(const SymbolStream& sa, const SymbolStream& sb,
                                std::size_t depth, std::uint64_t n_min = kDefaultMinSupport);

/// Word whose distribution is a vertex of the convex hull of the heap.
///
/// Two output symbols: extreme first coordinate (max or min), lower entropy
/// wins. Three: exact planar hull, lowest-entropy vertex. More: per-coordinate
/// argmax candidates, lowest entropy. Ties go to the shorter word, then the
/// lexicographically smaller one.
Word hull_vertex_string(const DerivativeHeap& heap);


/// Lexicographic-by-length ordering used for tie-breaking.
bool shortlex_less(std::span<const Symbol> a, std::span<const Symbol> b);

}  // namespace cauto
