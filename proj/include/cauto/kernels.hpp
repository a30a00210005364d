#pragma once

// Stream-scale counting kernels. Every kernel has a serial reference and an
// OpenMP version; both must produce identical counts.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cauto/alphabet.hpp"

namespace cauto::kernels {

/// Successor counts for every source word of length 0..depth.
///
/// counts[l][code * out_size + t] is the number of positions k such that the
/// length-l word ending at source[k] has the given code and target[k + 1] = t.
/// Codes are base-in_size big-endian, so numeric order is lexicographic order.
/// The empty word ends "before" every position: counts[0] is the histogram of
/// target.
struct SuccessorTable {
  std::size_t in_size = 0;
  std::size_t out_size = 0;
  std::size_t depth = 0;
  std::vector<std::vector<std::uint64_t>> counts;

  std::span<const std::uint64_t> row(std::size_t length, std::uint64_t code) const {
    return {counts[length].data() + code * out_size, out_size};
  }
  bool operator==(const SuccessorTable&) const = default;
};

/// Largest number of cells a SuccessorTable may hold across all lengths.
inline constexpr std::uint64_t kMaxTableCells = std::uint64_t{1} << 24;

SuccessorTable successor_counts_serial(std::span<const Symbol> source,
                                       std::span<const Symbol> target, std::size_t in_size,
                                       std::size_t out_size, std::size_t depth);
SuccessorTable successor_counts_parallel(std::span<const Symbol> source,
                                         std::span<const Symbol> target, std::size_t in_size,
                                         std::size_t out_size, std::size_t depth);

/// Occurrences of a single pattern in source.
struct PatternCounts {
  std::vector<std::uint64_t> successors;  // by target[k + 1]
  std::uint64_t occurrences = 0;          // including one ending at the last index
  bool operator==(const PatternCounts&) const = default;
};

PatternCounts pattern_counts_serial(std::span<const Symbol> source,
                                    std::span<const Symbol> target,
                                    std::span<const Symbol> pattern, std::size_t out_size);
PatternCounts pattern_counts_parallel(std::span<const Symbol> source,
                                      std::span<const Symbol> target,
                                      std::span<const Symbol> pattern, std::size_t out_size);

std::vector<std::uint64_t> histogram_serial(std::span<const Symbol> s, std::size_t k);
std::vector<std::uint64_t> histogram_parallel(std::span<const Symbol> s, std::size_t k);

/// Number of threads the parallel kernels will use (1 without OpenMP).
int max_threads();

}  // namespace cauto::kernels
