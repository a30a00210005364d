#pragma once

// Self-model inference from a single stream: find a synchronizing word,
// grow the state graph by derivative matching, keep one strong component,
// then estimate arc probabilities by replaying the stream.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"
#include "cauto/estimators.hpp"
#include "cauto/graph.hpp"
#include "cauto/machine.hpp"

namespace cauto {

struct InferenceConfig {
  double epsilon = 0.05;  // sup-norm matching tolerance
  std::size_t depth = 0;  // heap depth; 0 picks default_depth()
  std::uint64_t n_min = kDefaultMinSupport;
  std::size_t max_states = 256;
  std::size_t min_length = 1000;

  void validate() const;  // throws InputError
  std::size_t effective_depth(std::size_t input_alphabet_size) const;
};

/// Graph grown from a synchronizing word. State q is reached by ids[q] and
/// carries the reference distribution h[q] measured there.
struct StructureGraph {
  LabeledGraph graph;
  std::vector<Distribution> h;
  std::vector<Word> ids;
  std::vector<std::uint64_t> support;
  std::vector<std::string> warnings;
};

/// Successor counts of a word over the output alphabet. Self inference uses
/// symbolic successors, cross inference uses cross successors.
using SuccessorOracle = std::function<std::vector<std::uint64_t>(std::span<const Symbol>)>;

/// Generic structure growth shared by self and cross inference.
StructureGraph grow_structure(const SuccessorOracle& oracle, std::size_t input_size,
                              const Word& sync_word, const InferenceConfig& cfg);

/// Replaces a rare hull word by a better-supported heap word with the same
/// derivative. A candidate must lie within epsilon / 2 of the vertex and so
/// must its continuations of length 1 and 2 wherever both reach n_min, up to
/// sampling noise; otherwise the vertex is kept.
Word anchor_sync_word(const SuccessorOracle& oracle, std::size_t input_size,
                      const DerivativeHeap& heap, const Word& vertex, const InferenceConfig& cfg);

StructureGraph derive_structure(const SymbolStream& s, const Word& sync_word,
                                const InferenceConfig& cfg);

/// Keeps the largest nontrivial strong component (ties: the one holding
/// `sync_state`, then lowest state). Arcs leaving it are redirected to the
/// kept state with the nearest h. States are renumbered in ascending order.
StructureGraph extract_strong_component(const StructureGraph& g, StateId sync_state = 0);

struct ArcEstimate {
  Pfsa machine;
  std::vector<std::uint64_t> visits;  // arc traversals leaving each state
  std::vector<std::string> warnings;
};

/// Replays s through g from state 0 and row-normalizes the arc counts. Rows
/// never visited fall back to `fallback[q]` (uniform if absent).
ArcEstimate estimate_arc_probabilities(const LabeledGraph& g, const SymbolStream& s,
                                       std::span<const Distribution> fallback = {});

struct SelfInferenceResult {
  Pfsa machine;
  Word sync_word;
  std::vector<std::string> warnings;
};

SelfInferenceResult infer_pfsa_report(const SymbolStream& s, const InferenceConfig& cfg = {});
Pfsa infer_pfsa(const SymbolStream& s, const InferenceConfig& cfg = {});

/// Cross-model inference (source sa drives, target sb is predicted).
struct CrossInferenceResult {
  Xpfsa machine;
  Word sync_word;
  std::vector<std::uint64_t> support;  // per state, at its identifier
  std::vector<Word> ids;
  std::vector<std::string> warnings;
};

CrossInferenceResult infer_xpfsa(const SymbolStream& sa, const SymbolStream& sb,
                                 const InferenceConfig& cfg = {});

}  // namespace cauto
