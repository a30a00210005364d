#include "cauto/causality.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cauto/algebra.hpp"
#include "cauto/error.hpp"
#include "cauto/kernels.hpp"

namespace cauto {

Gamma gamma_analytic(std::span<const double> base, const Xpfsa& cross,
                     std::span<const double> occupancy) {
  if (base.size() != cross.output_alphabet.size())
    throw InputError("base distribution does not match the output alphabet");
  if (occupancy.size() != cross.n_states())
    throw InputError("occupancy does not match the cross model's states");
  const double denominator = entropy(base);
  if (!(denominator > 0.0))
    throw DegenerateProcessError("target process has zero symbol entropy; gamma is undefined");

  double numerator = 0.0;
  for (std::size_t q = 0; q < cross.n_states(); ++q)
    numerator += occupancy[q] * entropy(cross.out_morph.row(q));

  Gamma g;
  g.raw = 1.0 - numerator / denominator;
  g.value = std::clamp(g.raw, 0.0, 1.0);
  if (g.raw < -kGammaClampWarning || g.raw > 1.0 + kGammaClampWarning) {
    std::ostringstream msg;
    msg << "raw gamma " << g.raw << " clamped to " << g.value;
    g.warnings.push_back(msg.str());
  }
  return g;
}

EmpiricalGamma gamma_empirical(const SymbolStream& sa, const SymbolStream& sb,
                               const InferenceConfig& cfg) {
  if (sa.size() != sb.size())
    throw AlignmentError("streams are not aligned: lengths " + std::to_string(sa.size()) +
                         " and " + std::to_string(sb.size()));
  EmpiricalGamma out;
  const auto counts = kernels::histogram_parallel(sb.symbols(), sb.alphabet().size());
  out.base.assign(counts.begin(), counts.end());
  if (!normalize(out.base) || !(entropy(out.base) > 0.0))
    throw DegenerateProcessError("target stream repeats a single symbol; gamma is undefined");

  out.model = infer_xpfsa(sa, sb, cfg);
  out.occupancy = stream_run(out.model.machine.graph, sa.symbols());
  out.gamma = gamma_analytic(out.base, out.model.machine, out.occupancy);
  out.gamma.warnings.insert(out.gamma.warnings.begin(), out.model.warnings.begin(),
                            out.model.warnings.end());
  return out;
}

double gamma_error_bound(double epsilon, std::size_t target_alphabet_size,
                         double target_entropy) {
  if (target_alphabet_size < 2) throw InputError("error bound needs at least two output symbols");
  if (!(target_entropy > 0.0)) throw DegenerateProcessError("target entropy must be positive");
  const double k1 = static_cast<double>(target_alphabet_size - 1);
  return (epsilon * std::log2(k1 / epsilon) + (1.0 - epsilon) * std::log2(1.0 / (1.0 - epsilon))) /
         target_entropy;
}

CausalityNetwork causality_network(std::span<const NamedStream> streams,
                                   const InferenceConfig& cfg, const NetworkOptions& options) {
  if (streams.size() < 2) throw InputError("a network needs at least two streams");
  cfg.validate();
  const std::size_t n = streams.size();

  CausalityNetwork net;
  for (const auto& s : streams) net.nodes.push_back(s.name);

  struct Outcome {
    bool ok = false;
    NetworkArc arc;
    MissingArc missing;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) pairs.emplace_back(i, j);
  std::vector<Outcome> outcomes(pairs.size());

  auto run_pair = [&](std::size_t p) {
    const auto [i, j] = pairs[p];
    Outcome& o = outcomes[p];
    try {
      auto eg = gamma_empirical(streams[i].stream, streams[j].stream, cfg);
      o.arc = {i, j, eg.gamma.value, eg.gamma.raw, std::move(eg.model.machine)};
      o.ok = true;
    } catch (const Error& e) {
      o.missing = {i, j, e.kind(), e.what()};
    } catch (const std::exception& e) {
      o.missing = {i, j, "internal", e.what()};
    }
  };

  const auto count = static_cast<std::ptrdiff_t>(pairs.size());
#ifdef CAUTO_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (options.parallel)
#endif
  for (std::ptrdiff_t p = 0; p < count; ++p) run_pair(static_cast<std::size_t>(p));

  for (auto& o : outcomes) {
    if (o.ok)
      net.arcs.push_back(std::move(o.arc));
    else
      net.missing.push_back(std::move(o.missing));
  }

  net.self_models.resize(n);
  if (options.self_models) {
#ifdef CAUTO_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (options.parallel)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
      try {
        net.self_models[i] = infer_pfsa(streams[i].stream, cfg);
      } catch (const std::exception&) {
        net.self_models[i].reset();
      }
    }
  }
  return net;
}

Distribution predict_next(const Pfsa& self_model, const Xpfsa& cross_model,
                          std::span<const Symbol> history) {
  if (!(self_model.alphabet == cross_model.input_alphabet))
    throw InputError("self model and cross model input alphabets differ");
  const auto proj = project_onto(self_model, cross_model.graph);
  auto state = stationary_distribution(proj.machine);
  state = propagate_distribution(proj.machine, state, history);

  Distribution tau(cross_model.output_alphabet.size(), 0.0);
  for (std::size_t i = 0; i < state.size(); ++i)
    for (std::size_t s = 0; s < tau.size(); ++s)
      tau[s] += state[i] * cross_model.out_morph(proj.h_states[i], s);
  return tau;
}

PredictionResult fuse_predictions(std::span<const Distribution> taus,
                                  std::span<const double> gammas,
                                  const std::optional<Distribution>& fallback) {
  if (taus.size() != gammas.size()) throw InputError("one gamma is needed per prediction");
  PredictionResult r;
  r.per_source.assign(taus.begin(), taus.end());
  for (const auto& t : taus)
    if (t.size() != taus.front().size()) throw InputError("predictions over different alphabets");
  double total = 0.0;
  for (double g : gammas) {
    if (!(g >= 0.0)) throw InputError("gamma weights must be non-negative");
    total += g;
  }
  if (!(total > 0.0)) {
    if (fallback) {
      r.fused = *fallback;
    } else {
      if (taus.empty()) throw InputError("nothing to fuse and no fallback given");
      r.fused = uniform(taus.front().size());
    }
    return r;
  }
  for (double g : gammas) r.weights.push_back(g / total);
  if (std::all_of(taus.begin(), taus.end(), [&](const Distribution& t) { return t == taus.front(); })) {
    r.fused = taus.front();
    return r;
  }
  r.fused.assign(taus.front().size(), 0.0);
  for (std::size_t i = 0; i < taus.size(); ++i)
    for (std::size_t s = 0; s < r.fused.size(); ++s) r.fused[s] += r.weights[i] * taus[i][s];
  return r;
}

}  // namespace cauto
