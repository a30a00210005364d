#include <gtest/gtest.h>

#include <random>

#include "cauto/error.hpp"
#include "cauto/kernels.hpp"
#include "support/oracles.hpp"

using namespace cauto;
using namespace cauto::kernels;

namespace {

std::vector<Symbol> random_symbols(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  std::uniform_int_distribution<int> d(0, static_cast<int>(k) - 1);
  std::vector<Symbol> out(n);
  for (auto& s : out) s = static_cast<Symbol>(d(rng));
  return out;
}

}  // namespace

TEST(Kernels, SuccessorTableMatchesOracle) {
  std::mt19937_64 rng(1);
  for (std::size_t n : {0, 1, 2, 5, 37, 400}) {
    const auto a = random_symbols(rng, n, 2), b = random_symbols(rng, n, 3);
    const auto t = successor_counts_serial(a, b, 2, 3, 3);
    for (std::size_t l = 0; l <= 3; ++l) {
      const auto words = oracle::words_of_length(2, l);
      for (std::size_t code = 0; code < words.size(); ++code) {
        const auto expect = oracle::successors(a, b, words[code], 3);
        const auto row = t.row(l, code);
        EXPECT_EQ(std::vector<std::uint64_t>(row.begin(), row.end()), expect)
            << "n=" << n << " l=" << l << " code=" << code;
      }
    }
  }
}

TEST(Kernels, ParallelEqualsSerial) {
  std::mt19937_64 rng(2);
  for (std::size_t n : {0, 3, 1000, 100'003}) {
    for (std::size_t k : {2, 3, 5}) {
      const auto a = random_symbols(rng, n, k), b = random_symbols(rng, n, 2);
      EXPECT_EQ(successor_counts_serial(a, b, k, 2, 4), successor_counts_parallel(a, b, k, 2, 4));
      EXPECT_EQ(histogram_serial(a, k), histogram_parallel(a, k));
      for (std::size_t len : {0, 1, 3, 7}) {
        std::vector<Symbol> pattern(a.begin(), a.begin() + std::min(len, a.size()));
        EXPECT_EQ(pattern_counts_serial(a, b, pattern, 2), pattern_counts_parallel(a, b, pattern, 2))
            << "n=" << n << " k=" << k << " len=" << len;
      }
    }
  }
}

TEST(Kernels, PatternCountsMatchOracle) {
  std::mt19937_64 rng(4);
  const auto a = random_symbols(rng, 5000, 2), b = random_symbols(rng, 5000, 3);
  for (std::size_t len = 0; len <= 6; ++len)
    for (const auto& w : oracle::words_of_length(2, len)) {
      const auto pc = pattern_counts_parallel(a, b, w, 3);
      EXPECT_EQ(pc.occurrences, oracle::count(a, w));
      EXPECT_EQ(pc.successors, oracle::successors(a, b, w, 3));
    }
  // Pattern longer than the stream.
  const std::vector<Symbol> tiny{0, 1};
  const std::vector<Symbol> longer{0, 1, 0};
  EXPECT_EQ(pattern_counts_parallel(tiny, tiny, longer, 2).occurrences, 0u);
}

TEST(Kernels, Histogram) {
  const std::vector<Symbol> s{0, 2, 2, 1, 2};
  EXPECT_EQ(histogram_serial(s, 3), (std::vector<std::uint64_t>{1, 1, 3}));
  EXPECT_GE(max_threads(), 1);
}

TEST(Kernels, TooLargeTableIsRejected) {
  const std::vector<Symbol> s{0, 1};
  EXPECT_THROW(successor_counts_serial(s, s, 10, 10, 12), InputError);
}
