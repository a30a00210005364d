#include "cauto/error.hpp"
#include "cauto/estimators.hpp"
#include "cauto/inference.hpp"

namespace cauto {

CrossInferenceResult infer_xpfsa(const SymbolStream& sa, const SymbolStream& sb,
                                 const InferenceConfig& cfg) {
  cfg.validate();
  if (sa.size() != sb.size())
    throw AlignmentError("streams are not aligned: lengths " + std::to_string(sa.size()) +
                         " and " + std::to_string(sb.size()));
  if (sa.size() < cfg.min_length || sa.empty())
    throw InsufficientDataError("streams of length " + std::to_string(sa.size()) +
                                " are shorter than the minimum " +
                                std::to_string(cfg.min_length));

  const auto heap = build_cross_heap(sa, sb, cfg.effective_depth(sa.alphabet().size()), cfg.n_min);
  const SuccessorOracle oracle = [&](std::span<const Symbol> x) {
    return cross_successor_counts(sa, sb, x);
  };
  Word x0 = anchor_sync_word(oracle, sa.alphabet().size(), heap, hull_vertex_string(heap), cfg);
  auto structure =
      extract_strong_component(grow_structure(oracle, sa.alphabet().size(), x0, cfg), 0);

  CrossInferenceResult r;
  r.machine.input_alphabet = sa.alphabet();
  r.machine.output_alphabet = sb.alphabet();
  r.machine.graph = structure.graph;
  r.machine.out_morph = Matrix(structure.h.size(), sb.alphabet().size());
  for (std::size_t q = 0; q < structure.h.size(); ++q)
    for (std::size_t j = 0; j < sb.alphabet().size(); ++j)
      r.machine.out_morph(q, j) = structure.h[q][j];
  r.sync_word = std::move(x0);
  r.support = std::move(structure.support);
  r.ids = std::move(structure.ids);
  r.warnings = std::move(structure.warnings);
  return r;
}

}  // namespace cauto
