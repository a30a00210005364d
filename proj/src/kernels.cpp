#include "cauto/kernels.hpp"

#include <algorithm>

#include "cauto/error.hpp"

#ifdef CAUTO_HAVE_OPENMP
#include <omp.h>
#endif

namespace cauto::kernels {

namespace {

std::vector<std::uint64_t> powers(std::size_t base, std::size_t depth) {
  std::vector<std::uint64_t> p(depth + 1, 1);
  for (std::size_t l = 1; l <= depth; ++l) p[l] = p[l - 1] * base;
  return p;
}

SuccessorTable empty_table(std::span<const Symbol> source, std::span<const Symbol> target,
                           std::size_t in_size, std::size_t out_size, std::size_t depth) {
  if (source.size() != target.size()) throw AlignmentError("source and target lengths differ");
  if (in_size == 0 || out_size == 0) throw InputError("empty alphabet");
  std::uint64_t cells = 0;
  std::uint64_t words = 1;
  for (std::size_t l = 0; l <= depth; ++l) {
    cells += words * out_size;
    if (cells > kMaxTableCells) throw InputError("heap depth too large for the alphabet size");
    words *= in_size;
  }
  SuccessorTable t{in_size, out_size, depth, {}};
  const auto pw = powers(in_size, depth);
  t.counts.resize(depth + 1);
  for (std::size_t l = 0; l <= depth; ++l) t.counts[l].assign(pw[l] * out_size, 0);
  return t;
}

// Counts for end positions k in [begin, end), k + 1 < n.
void accumulate_successors(std::span<const Symbol> source, std::span<const Symbol> target,
                           std::size_t begin, std::size_t end,
                           const std::vector<std::uint64_t>& pw,
                           std::vector<std::vector<std::uint64_t>>& counts,
                           std::size_t in_size, std::size_t out_size) {
  const std::size_t depth = pw.size() - 1;
  if (depth == 0 || begin >= end) return;
  const std::uint64_t modulus = pw[depth];
  std::uint64_t code = 0;
  const std::size_t prime_from = begin >= depth - 1 ? begin - (depth - 1) : 0;
  for (std::size_t k = prime_from; k < begin; ++k) code = (code * in_size + source[k]) % modulus;
  for (std::size_t k = begin; k < end; ++k) {
    code = (code * in_size + source[k]) % modulus;
    const std::size_t next = target[k + 1];
    const std::size_t longest = std::min(depth, k + 1);
    for (std::size_t l = 1; l <= longest; ++l)
      ++counts[l][(code % pw[l]) * out_size + next];
  }
}

}  // namespace

int max_threads() {
#ifdef CAUTO_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

SuccessorTable successor_counts_serial(std::span<const Symbol> source,
                                       std::span<const Symbol> target, std::size_t in_size,
                                       std::size_t out_size, std::size_t depth) {
  SuccessorTable t = empty_table(source, target, in_size, out_size, depth);
  const std::size_t n = source.size();
  for (Symbol s : target) ++t.counts[0][s];
  if (n < 2 || depth == 0) return t;
  // Reference: rebuild each word code from scratch.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::uint64_t code = 0;
    for (std::size_t l = 1; l <= depth && l <= k + 1; ++l) {
      // word source[k-l+1..k]: prepend source[k-l+1] as the new most
      // significant digit.
      std::uint64_t weight = 1;
      for (std::size_t i = 1; i < l; ++i) weight *= in_size;
      code += source[k + 1 - l] * weight;
      ++t.counts[l][code * out_size + target[k + 1]];
    }
  }
  return t;
}

SuccessorTable successor_counts_parallel(std::span<const Symbol> source,
                                         std::span<const Symbol> target, std::size_t in_size,
                                         std::size_t out_size, std::size_t depth) {
  SuccessorTable t = empty_table(source, target, in_size, out_size, depth);
  const std::size_t n = source.size();
  const auto pw = powers(in_size, depth);
  const std::size_t last_end = n >= 1 ? n - 1 : 0;  // end positions k < n - 1

#ifdef CAUTO_HAVE_OPENMP
#pragma omp parallel
  {
    const std::size_t threads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t id = static_cast<std::size_t>(omp_get_thread_num());
#else
  {
    const std::size_t threads = 1;
    const std::size_t id = 0;
#endif
    std::vector<std::vector<std::uint64_t>> local(depth + 1);
    for (std::size_t l = 0; l <= depth; ++l) local[l].assign(t.counts[l].size(), 0);

    const std::size_t hist_begin = n * id / threads, hist_end = n * (id + 1) / threads;
    for (std::size_t i = hist_begin; i < hist_end; ++i) ++local[0][target[i]];

    const std::size_t begin = last_end * id / threads, end = last_end * (id + 1) / threads;
    accumulate_successors(source, target, begin, end, pw, local, in_size, out_size);

#ifdef CAUTO_HAVE_OPENMP
#pragma omp critical(cauto_successor_reduce)
#endif
    for (std::size_t l = 0; l <= depth; ++l)
      for (std::size_t c = 0; c < local[l].size(); ++c) t.counts[l][c] += local[l][c];
  }
  return t;
}

namespace {

void check_pattern_inputs(std::span<const Symbol> source, std::span<const Symbol> target,
                          std::span<const Symbol> pattern, std::size_t out_size) {
  if (source.size() != target.size()) throw AlignmentError("source and target lengths differ");
  for (Symbol s : target)
    if (s >= out_size) throw InputError("target symbol out of range");
  (void)pattern;
}

PatternCounts empty_pattern_counts(std::span<const Symbol> source,
                                   std::span<const Symbol> target, std::size_t out_size) {
  PatternCounts pc;
  pc.successors.assign(out_size, 0);
  pc.occurrences = source.size();
  for (Symbol s : target) ++pc.successors[s];
  return pc;
}

}  // namespace

PatternCounts pattern_counts_serial(std::span<const Symbol> source,
                                    std::span<const Symbol> target,
                                    std::span<const Symbol> pattern, std::size_t out_size) {
  check_pattern_inputs(source, target, pattern, out_size);
  if (pattern.empty()) return empty_pattern_counts(source, target, out_size);
  PatternCounts pc;
  pc.successors.assign(out_size, 0);
  const std::size_t n = source.size(), m = pattern.size();
  if (m > n) return pc;
  for (std::size_t i = 0; i + m <= n; ++i) {
    if (!std::equal(pattern.begin(), pattern.end(), source.begin() + i)) continue;
    ++pc.occurrences;
    const std::size_t k = i + m - 1;
    if (k + 1 < n) ++pc.successors[target[k + 1]];
  }
  return pc;
}

PatternCounts pattern_counts_parallel(std::span<const Symbol> source,
                                      std::span<const Symbol> target,
                                      std::span<const Symbol> pattern, std::size_t out_size) {
  check_pattern_inputs(source, target, pattern, out_size);
  if (pattern.empty()) {
    PatternCounts pc;
    pc.successors = histogram_parallel(target, out_size);
    pc.occurrences = source.size();
    return pc;
  }
  PatternCounts pc;
  pc.successors.assign(out_size, 0);
  const std::size_t n = source.size(), m = pattern.size();
  if (m > n) return pc;

  // Rabin-Karp over wrapping 64-bit arithmetic; hash hits are verified.
  constexpr std::uint64_t kBase = 0x9E3779B97F4A7C15ull;
  std::uint64_t lead_weight = 1;
  for (std::size_t i = 1; i < m; ++i) lead_weight *= kBase;
  auto hash_at = [&](std::size_t i) {
    std::uint64_t h = 0;
    for (std::size_t j = 0; j < m; ++j) h = h * kBase + (source[i + j] + 1u);
    return h;
  };
  std::uint64_t target_hash = 0;
  for (Symbol s : pattern) target_hash = target_hash * kBase + (s + 1u);

  const std::size_t starts = n - m + 1;
  std::uint64_t occurrences = 0;

#ifdef CAUTO_HAVE_OPENMP
#pragma omp parallel reduction(+ : occurrences)
  {
    const std::size_t threads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t id = static_cast<std::size_t>(omp_get_thread_num());
#else
  {
    const std::size_t threads = 1;
    const std::size_t id = 0;
#endif
    std::vector<std::uint64_t> local(out_size, 0);
    const std::size_t begin = starts * id / threads, end = starts * (id + 1) / threads;
    if (begin < end) {
      std::uint64_t h = hash_at(begin);
      for (std::size_t i = begin;; ++i) {
        if (h == target_hash && std::equal(pattern.begin(), pattern.end(), source.begin() + i)) {
          ++occurrences;
          const std::size_t k = i + m - 1;
          if (k + 1 < n) ++local[target[k + 1]];
        }
        if (i + 1 >= end) break;
        h = (h - (source[i] + 1u) * lead_weight) * kBase + (source[i + m] + 1u);
      }
    }
#ifdef CAUTO_HAVE_OPENMP
#pragma omp critical(cauto_pattern_reduce)
#endif
    for (std::size_t s = 0; s < out_size; ++s) pc.successors[s] += local[s];
  }
  pc.occurrences = occurrences;
  return pc;
}

std::vector<std::uint64_t> histogram_serial(std::span<const Symbol> s, std::size_t k) {
  std::vector<std::uint64_t> h(k, 0);
  for (Symbol v : s) {
    if (v >= k) throw InputError("symbol out of range");
    ++h[v];
  }
  return h;
}

std::vector<std::uint64_t> histogram_parallel(std::span<const Symbol> s, std::size_t k) {
  std::vector<std::uint64_t> h(k, 0);
  bool out_of_range = false;
  const std::size_t n = s.size();
#ifdef CAUTO_HAVE_OPENMP
#pragma omp parallel
  {
    const std::size_t threads = static_cast<std::size_t>(omp_get_num_threads());
    const std::size_t id = static_cast<std::size_t>(omp_get_thread_num());
#else
  {
    const std::size_t threads = 1;
    const std::size_t id = 0;
#endif
    std::vector<std::uint64_t> local(k, 0);
    bool bad = false;
    for (std::size_t i = n * id / threads; i < n * (id + 1) / threads; ++i) {
      if (s[i] >= k) {
        bad = true;
        break;
      }
      ++local[s[i]];
    }
#ifdef CAUTO_HAVE_OPENMP
#pragma omp critical(cauto_histogram_reduce)
#endif
    {
      out_of_range = out_of_range || bad;
      for (std::size_t v = 0; v < k; ++v) h[v] += local[v];
    }
  }
  if (out_of_range) throw InputError("symbol out of range");
  return h;
}

}  // namespace cauto::kernels
