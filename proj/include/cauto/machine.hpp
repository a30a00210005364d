#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"
#include "cauto/graph.hpp"

namespace cauto {

/// Probabilistic finite-state automaton: a labeled graph plus per-state
/// next-symbol probabilities (the morph matrix, one row per state).
struct Pfsa {
  Alphabet alphabet;
  LabeledGraph graph;
  Matrix morph;

  std::size_t n_states() const noexcept { return graph.n_states(); }
  double morph_at(StateId q, Symbol s) const { return morph(q, s); }
};

/// Crossed PFSA: transitions driven by the input alphabet, states carry
/// distributions over the output alphabet.
struct Xpfsa {
  Alphabet input_alphabet;
  Alphabet output_alphabet;
  LabeledGraph graph;
  Matrix out_morph;

  std::size_t n_states() const noexcept { return graph.n_states(); }
};

struct Violation {
  enum class Kind { Shape, Totality, RowStochastic, Connectivity };
  Kind kind;
  std::string detail;
};

std::vector<Violation> validate_pfsa(const Pfsa& p);
std::vector<Violation> validate_xpfsa(const Xpfsa& x);

/// Throws InputError listing the violations, if any.
void require_valid(const Pfsa& p);
void require_valid(const Xpfsa& x);

/// M[i][j] = sum of morph(i, s) over symbols s with delta(i, s) = j.
Matrix transition_matrix(const Pfsa& p);

/// Stationary distribution of a row-stochastic matrix. Power iteration on
/// the lazy chain (M + I) / 2 from uniform; same fixed point as M but
/// aperiodic. Throws ConvergenceError past the iteration cap.
Distribution stationary_distribution(const Matrix& m);
Distribution stationary_distribution(const Pfsa& p);

/// Gamma_s[i][j] = morph(i, s) if delta(i, s) = j, else 0.
Matrix transformation_matrix(const Pfsa& p, Symbol s);

/// Normalized left product of `start` through the transformation matrices of
/// `word`. Empty word returns `start`.
Distribution propagate_distribution(const Pfsa& p, std::span<const double> start,
                                    std::span<const Symbol> word);
Distribution propagate_distribution(const Pfsa& p, std::span<const double> start,
                                    const SymbolStream& word);

/// Samples `length` symbols starting from the state of largest stationary
/// weight (lowest index on ties). Deterministic in `seed`.
SymbolStream sample_stream(const Pfsa& p, std::size_t length, std::uint64_t seed);

/// Sup over all strings of length <= depth (with positive probability under
/// both machines) of the sup-norm gap between the analytic next-symbol
/// distributions stationary * Gamma_x * morph.
double pfsa_distance(const Pfsa& a, const Pfsa& b, std::size_t depth = 8);

inline const LabeledGraph& graph_of(const Pfsa& p) { return p.graph; }
inline const LabeledGraph& graph_of(const Xpfsa& x) { return x.graph; }

}  // namespace cauto
