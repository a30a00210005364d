#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cauto/alphabet.hpp"
#include "cauto/distribution.hpp"
#include "cauto/inference.hpp"
#include "cauto/machine.hpp"

namespace cauto {

/// Coefficient of causal dependence with its pre-clamp value.
struct Gamma {
  double value = 0.0;  // clamped to [0, 1]
  double raw = 0.0;
  std::vector<std::string> warnings;
};

/// Raw values outside [0, 1] by more than this are reported as warnings.
inline constexpr double kGammaClampWarning = 1e-6;

/// 1 - sum_q occupancy[q] H(out_morph[q]) / H(base). Throws
/// DegenerateProcessError if H(base) = 0.
Gamma gamma_analytic(std::span<const double> base, const Xpfsa& cross,
                     std::span<const double> occupancy);

struct EmpiricalGamma {
  Gamma gamma;
  CrossInferenceResult model;
  Distribution occupancy;
  Distribution base;
};

/// gamma from sa to sb: infers the cross model, replays sa through it for the
/// occupancy and uses sb's symbol frequencies as the base distribution.
EmpiricalGamma gamma_empirical(const SymbolStream& sa, const SymbolStream& sb,
                               const InferenceConfig& cfg = {});

/// Asymptotic bound on |gamma_empirical - gamma| for matching tolerance eps,
/// target alphabet size k and target symbol entropy h.
double gamma_error_bound(double epsilon, std::size_t target_alphabet_size,
                         double target_entropy);

struct NamedStream {
  std::string name;
  SymbolStream stream;
};

struct NetworkArc {
  std::size_t from = 0;
  std::size_t to = 0;
  double gamma = 0.0;
  double raw_gamma = 0.0;
  Xpfsa model;
};

struct MissingArc {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string kind;
  std::string reason;
};

struct CausalityNetwork {
  std::vector<std::string> nodes;
  std::vector<NetworkArc> arcs;  // ordered by (from, to)
  std::vector<MissingArc> missing;
  std::vector<std::optional<Pfsa>> self_models;  // filled when requested
};

struct NetworkOptions {
  bool parallel = true;
  bool self_models = false;
};

/// gamma for every ordered pair of distinct streams. A failing pair becomes a
/// MissingArc; the result does not depend on scheduling.
CausalityNetwork causality_network(std::span<const NamedStream> streams,
                                   const InferenceConfig& cfg = {},
                                   const NetworkOptions& options = {});

/// Next-symbol distribution of the cross model's target given a history of the
/// source: project the source self-model onto the cross model's graph, start
/// from its stationary distribution, propagate through the history and mix the
/// output rows.
Distribution predict_next(const Pfsa& self_model, const Xpfsa& cross_model,
                          std::span<const Symbol> history);

struct PredictionResult {
  std::vector<Distribution> per_source;
  Distribution fused;
  std::vector<double> weights;  // empty when the fallback was used
};

/// gamma-weighted average of per-source predictions. With all gammas zero the
/// fallback is returned (uniform when none is given).
PredictionResult fuse_predictions(std::span<const Distribution> taus,
                                  std::span<const double> gammas,
                                  const std::optional<Distribution>& fallback = std::nullopt);

}  // namespace cauto
