#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"
#include "cauto/graph.hpp"
#include "cauto/machine.hpp"

namespace cauto {

/// g's probabilities carried over the product of g's and h's graphs,
/// restricted to one closed strong component of the part reachable from
/// (argmax stationary(g), 0). `pairs[i]` names the (g, h) state behind
/// product state i.
struct ProductMachine {
  Pfsa machine;
  std::vector<std::pair<StateId, StateId>> pairs;
};

ProductMachine synchronous_product(const Pfsa& g, const LabeledGraph& h);
Pfsa synchronous_composition(const Pfsa& g, const LabeledGraph& h);

/// g re-expressed on h's graph by stationary-weighted averaging of product
/// rows. h states with zero aggregate weight are dropped; `h_states[i]` is
/// the original h state behind machine state i.
struct Projection {
  Pfsa machine;
  std::vector<StateId> h_states;
  std::vector<std::string> warnings;
};

Projection project_onto(const Pfsa& g, const LabeledGraph& h);
Pfsa projective_composition(const Pfsa& g, const LabeledGraph& h);

/// Marginal over h's states of the product's stationary distribution.
Distribution projected_distribution(const Pfsa& g, const LabeledGraph& h);

/// Normalized state-visit counts from replaying s through g, starting at
/// state 0 and counting that start.
Distribution stream_run(const LabeledGraph& g, std::span<const Symbol> s);
Distribution stream_run(const LabeledGraph& g, const SymbolStream& s);

}  // namespace cauto
