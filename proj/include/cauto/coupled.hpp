#pragma once

#include <cstdint>
#include <utility>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"

namespace cauto {

/// Ground-truth generator for a pair of coupled processes. At every step each
/// process draws its next symbol from a row of its table selected by the
/// current symbol of the conditioning process (or row 0 if unconditioned).
struct ConditionalRule {
  enum class Given { None, Self, Other };
  Given given = Given::None;
  Matrix table;  // rows: conditioning symbol; cols: own next symbol
};

struct CoupledSystemSpec {
  Alphabet alphabet_a;
  Alphabet alphabet_b;
  Symbol initial_a = 0;
  Symbol initial_b = 0;
  ConditionalRule rule_a;
  ConditionalRule rule_b;

  /// Throws InputError when a table has the wrong shape or a row is not a
  /// distribution.
  void validate() const;

  /// A's next symbol copies B's current symbol with probability 0.8; B is
  /// i.i.d. uniform. A depends on B, B does not depend on A.
  static CoupledSystemSpec unidirectional_example();

  /// Both processes i.i.d. with the given rows.
  static CoupledSystemSpec independent(Distribution a, Distribution b);
};

std::pair<SymbolStream, SymbolStream> simulate_coupled(const CoupledSystemSpec& spec,
                                                      std::size_t length, std::uint64_t seed);

}  // namespace cauto
