// Command-line front end: inference, gamma, networks, prediction, fixtures.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <span>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cauto/algebra.hpp"
#include "cauto/causality.hpp"
#include "cauto/coupled.hpp"
#include "cauto/error.hpp"
#include "cauto/inference.hpp"
#include "cauto/io.hpp"
#include "cauto/machine.hpp"

#ifdef CAUTO_HAVE_OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;
using cauto::io::Json;

namespace {

struct RunConfig {
  cauto::InferenceConfig inference;
  std::string quantizer = "updown";
  std::uint64_t seed = 1;
};

void add_inference_options(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--epsilon", rc.inference.epsilon, "sup-norm matching tolerance")
      ->capture_default_str();
  cmd->add_option("--depth", rc.inference.depth, "derivative heap depth (0 = automatic)")
      ->capture_default_str();
  cmd->add_option("--nmin", rc.inference.n_min, "minimum support for heap entries")
      ->capture_default_str();
  cmd->add_option("--min-length", rc.inference.min_length, "minimum stream length")
      ->capture_default_str();
  cmd->add_option("--max-states", rc.inference.max_states, "state-count safety cap")
      ->capture_default_str();
}

std::optional<cauto::Alphabet> alphabet_option(const std::string& labels) {
  if (labels.empty()) return std::nullopt;
  std::vector<std::string> out;
  if (labels.find(',') != std::string::npos) {
    std::stringstream ss(labels);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
  } else {
    for (char c : labels) out.emplace_back(1, c);
  }
  return cauto::Alphabet(std::move(out));
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    cauto::io::write_text(path, text);
  }
}

Json distribution_json(const cauto::Distribution& d) {
  Json out = Json::array();
  for (double v : d) out.push_back(cauto::io::round_significant(v));
  return out;
}

Json labeled_distribution(const cauto::Alphabet& a, const cauto::Distribution& d) {
  Json out;
  for (std::size_t i = 0; i < d.size(); ++i) out[a.label(static_cast<cauto::Symbol>(i))] = cauto::io::round_significant(d[i]);
  return out;
}

cauto::SymbolStream quantize(std::span<const double> column, const std::string& quantizer) {
  if (quantizer == "updown") return cauto::io::quantize_updown(column);
  const std::string prefix = "quantile-";
  if (quantizer.rfind(prefix, 0) == 0) {
    const auto digits = quantizer.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw cauto::InputError("bad quantile count in '" + quantizer + "'");
    return cauto::io::quantize_quantile(column, std::stoul(digits));
  }
  throw cauto::InputError("unknown quantizer '" + quantizer + "' (use updown or quantile-<k>)");
}

std::vector<cauto::NamedStream> quantize_table(const cauto::io::SeriesTable& table,
                                               const std::string& quantizer) {
  std::vector<cauto::NamedStream> out;
  for (std::size_t c = 0; c < table.names.size(); ++c)
    out.push_back({table.names[c], quantize(table.columns[c], quantizer)});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causal inference on symbol streams with probabilistic automata"};
  app.require_subcommand(1);
  RunConfig rc;

  // infer-self
  std::string stream_a, stream_b, alphabet_a, alphabet_b, output, dot_output, heap_output;
  auto* infer_self = app.add_subcommand("infer-self", "infer a self-model PFSA from one stream");
  infer_self->add_option("stream", stream_a, "stream file")->required();
  infer_self->add_option("--alphabet", alphabet_a, "symbol labels, e.g. 01 or a,b,c");
  infer_self->add_option("-o,--output", output, "machine JSON path (stdout if omitted)");
  infer_self->add_option("--heap", heap_output, "also write the derivative heap as JSON");
  add_inference_options(infer_self, rc);

  auto* infer_cross = app.add_subcommand("infer-cross", "infer the cross model from A to B");
  infer_cross->add_option("stream_a", stream_a, "source stream")->required();
  infer_cross->add_option("stream_b", stream_b, "target stream")->required();
  infer_cross->add_option("--alphabet-a", alphabet_a, "source labels");
  infer_cross->add_option("--alphabet-b", alphabet_b, "target labels");
  infer_cross->add_option("-o,--output", output, "machine JSON path (stdout if omitted)");
  infer_cross->add_option("--heap", heap_output, "also write the cross-derivative heap as JSON");
  add_inference_options(infer_cross, rc);

  auto* gamma = app.add_subcommand("gamma", "coefficient of causal dependence from A to B");
  gamma->add_option("stream_a", stream_a, "source stream")->required();
  gamma->add_option("stream_b", stream_b, "target stream")->required();
  gamma->add_option("--alphabet-a", alphabet_a, "source labels");
  gamma->add_option("--alphabet-b", alphabet_b, "target labels");
  add_inference_options(gamma, rc);

  std::string csv_path;
  bool serial = false;
  int threads = 0;
  auto* network = app.add_subcommand("network", "causality network over CSV columns");
  network->add_option("csv", csv_path, "CSV with one named series per column")->required();
  network->add_option("--quantizer", rc.quantizer, "updown or quantile-<k>")->capture_default_str();
  network->add_option("-o,--output", output, "network JSON path (stdout if omitted)");
  network->add_option("--dot", dot_output, "graph text (Graphviz) path");
  network->add_flag("--serial", serial, "compute pairs sequentially");
  network->add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");
  add_inference_options(network, rc);

  std::string self_path, cross_path, history;
  auto* predict = app.add_subcommand("predict", "next-symbol distribution from cross-talk");
  predict->add_option("self", self_path, "self-model PFSA JSON of the source")->required();
  predict->add_option("cross", cross_path, "cross-model XPFSA JSON source -> target")->required();
  predict->add_option("--history", history, "observed source history, e.g. 0110");

  std::string spec_path;
  std::size_t length = 100000;
  auto* simulate = app.add_subcommand("simulate", "simulate a coupled pair of processes");
  simulate->add_option("spec", spec_path, "coupled system JSON")->required();
  simulate->add_option("--length", length, "samples per stream")->capture_default_str();
  simulate->add_option("--seed", rc.seed, "random seed")->capture_default_str();
  simulate->add_option("-o,--output", output, "output directory (a.txt, b.txt)")->required();

  std::string machine_path;
  auto* sample = app.add_subcommand("sample", "sample a stream from a PFSA");
  sample->add_option("machine", machine_path, "PFSA JSON")->required();
  sample->add_option("--length", length, "stream length")->capture_default_str();
  sample->add_option("--seed", rc.seed, "random seed")->capture_default_str();
  sample->add_option("-o,--output", output, "stream path (stdout if omitted)");

  auto* quantize_cmd = app.add_subcommand("quantize", "quantize CSV columns into symbol streams");
  quantize_cmd->add_option("csv", csv_path, "CSV with one named series per column")->required();
  quantize_cmd->add_option("--quantizer", rc.quantizer, "updown or quantile-<k>")
      ->capture_default_str();
  quantize_cmd->add_option("-o,--output", output, "output directory, one <name>.txt per column")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    rc.inference.validate();
    if (infer_self->parsed()) {
      const auto s = cauto::io::read_stream(stream_a, alphabet_option(alphabet_a));
      if (!heap_output.empty())
        cauto::io::write_text(
            heap_output,
            cauto::io::heap_to_json(
                cauto::build_heap(s, rc.inference.effective_depth(s.alphabet().size()),
                                  rc.inference.n_min),
                s.alphabet())
                    .dump(2) +
                "\n");
      const auto r = cauto::infer_pfsa_report(s, rc.inference);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      emit(cauto::io::to_json(r.machine).dump(2) + "\n", output);
    } else if (infer_cross->parsed()) {
      const auto a = cauto::io::read_stream(stream_a, alphabet_option(alphabet_a));
      const auto b = cauto::io::read_stream(stream_b, alphabet_option(alphabet_b));
      if (!heap_output.empty())
        cauto::io::write_text(
            heap_output,
            cauto::io::heap_to_json(
                cauto::build_cross_heap(a, b, rc.inference.effective_depth(a.alphabet().size()),
                                        rc.inference.n_min),
                a.alphabet())
                    .dump(2) +
                "\n");
      const auto r = cauto::infer_xpfsa(a, b, rc.inference);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      emit(cauto::io::to_json(r.machine).dump(2) + "\n", output);
    } else if (gamma->parsed()) {
      const auto a = cauto::io::read_stream(stream_a, alphabet_option(alphabet_a));
      const auto b = cauto::io::read_stream(stream_b, alphabet_option(alphabet_b));
      const auto eg = cauto::gamma_empirical(a, b, rc.inference);
      Json j;
      j["gamma"] = cauto::io::round_significant(eg.gamma.value);
      j["raw_gamma"] = cauto::io::round_significant(eg.gamma.raw);
      j["n_states"] = eg.model.machine.n_states();
      j["sync_string"] = cauto::format_word(a.alphabet(), eg.model.sync_word);
      j["occupancy"] = distribution_json(eg.occupancy);
      j["base"] = distribution_json(eg.base);
      j["error_bound"] = cauto::io::round_significant(cauto::gamma_error_bound(
          rc.inference.epsilon, b.alphabet().size(), cauto::entropy(eg.base)));
      j["warnings"] = eg.gamma.warnings;
      std::cout << j.dump(2) << "\n";
    } else if (network->parsed()) {
#ifdef CAUTO_HAVE_OPENMP
      if (threads > 0) omp_set_num_threads(threads);
#endif
      const auto table = cauto::io::load_csv(csv_path);
      const auto streams = quantize_table(table, rc.quantizer);
      const auto net = cauto::causality_network(streams, rc.inference, {.parallel = !serial});
      emit(cauto::io::export_network(net, cauto::io::NetworkFormat::Json), output);
      if (!dot_output.empty())
        cauto::io::write_text(dot_output,
                              cauto::io::export_network(net, cauto::io::NetworkFormat::GraphText));
    } else if (predict->parsed()) {
      const auto self_model = cauto::io::load_pfsa(self_path);
      const auto cross_model = cauto::io::load_xpfsa(cross_path, self_model.alphabet);
      const auto word = cauto::parse_word(self_model.alphabet, history);
      const auto tau = cauto::predict_next(self_model, cross_model, word);
      Json j;
      j["history"] = history;
      j["distribution"] = labeled_distribution(cross_model.output_alphabet, tau);
      std::cout << j.dump(2) << "\n";
    } else if (simulate->parsed()) {
      const auto spec = cauto::io::coupled_spec_from_json(cauto::io::read_json(spec_path));
      const auto [a, b] = cauto::simulate_coupled(spec, length, rc.seed);
      cauto::io::write_stream(a, fs::path(output) / "a.txt");
      cauto::io::write_stream(b, fs::path(output) / "b.txt");
    } else if (sample->parsed()) {
      const auto machine = cauto::io::load_pfsa(machine_path);
      cauto::require_valid(machine);
      emit(cauto::io::format_stream(cauto::sample_stream(machine, length, rc.seed)), output);
    } else if (quantize_cmd->parsed()) {
      const auto table = cauto::io::load_csv(csv_path);
      for (const auto& ns : quantize_table(table, rc.quantizer))
        cauto::io::write_stream(ns.stream, fs::path(output) / (ns.name + ".txt"));
    }
  } catch (const cauto::Error& e) {
    Json err{{"error", e.kind()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    Json err{{"error", "internal"}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
