#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "cauto/alphabet.hpp"
#include "cauto/causality.hpp"
#include "cauto/coupled.hpp"
#include "cauto/estimators.hpp"
#include "cauto/machine.hpp"

namespace cauto::io {

using Json = nlohmann::ordered_json;

// ---- quantization ----------------------------------------------------------

/// Symbol k is '0' iff series[k + 1] < series[k], else '1'. Length n - 1.
SymbolStream quantize_updown(std::span<const double> series);

/// k-quantile bins with linearly interpolated boundaries; a value equal to a
/// boundary goes to the lower bin.
SymbolStream quantize_quantile(std::span<const double> series, std::size_t k);

// ---- tables ----------------------------------------------------------------

struct SeriesTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::vector<std::string> time_index;  // empty when the file had none

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Header row of names, comma-separated numeric body. A first column that is
/// named like a time axis or holds non-numeric values becomes the time index.
/// Rows with a missing value (empty, NA, nan) are dropped table-wide; rows
/// with the wrong number of fields are a FormatError.
SeriesTable parse_csv(std::istream& in);
SeriesTable load_csv(const std::filesystem::path& path);

// ---- machines --------------------------------------------------------------

/// Reals rounded to 12 significant digits.
double round_significant(double v, int digits = 12);

Json to_json(const Pfsa& p);
Json to_json(const Xpfsa& x);
/// Throw FormatError on malformed documents and InputError when the machine
/// alphabet differs from `expected`.
Pfsa pfsa_from_json(const Json& j, const std::optional<Alphabet>& expected = std::nullopt);
Xpfsa xpfsa_from_json(const Json& j, const std::optional<Alphabet>& expected_input = std::nullopt);

void dump_machine(const Pfsa& p, const std::filesystem::path& path);
void dump_machine(const Xpfsa& x, const std::filesystem::path& path);
Pfsa load_pfsa(const std::filesystem::path& path,
               const std::optional<Alphabet>& expected = std::nullopt);
Xpfsa load_xpfsa(const std::filesystem::path& path,
                 const std::optional<Alphabet>& expected_input = std::nullopt);

// ---- heaps, networks, specs -------------------------------------------------

Json heap_to_json(const DerivativeHeap& heap, const Alphabet& input);

enum class NetworkFormat { Json, GraphText };

Json network_to_json(const CausalityNetwork& net);
/// Graphviz digraph; arc labels are gamma to 4 decimals, pen width grows with
/// gamma.
std::string network_to_dot(const CausalityNetwork& net);
std::string export_network(const CausalityNetwork& net, NetworkFormat format);

CoupledSystemSpec coupled_spec_from_json(const Json& j);
Json to_json(const CoupledSystemSpec& spec);

// ---- streams on disk ---------------------------------------------------------

/// One line; single-character labels are concatenated when the alphabet is
/// compact, otherwise comma-separated.
std::string format_stream(const SymbolStream& s);

/// Parses a stream file. Without an alphabet the distinct labels, sorted, are
/// used.
SymbolStream parse_stream(std::string_view text,
                          const std::optional<Alphabet>& alphabet = std::nullopt);
SymbolStream read_stream(const std::filesystem::path& path,
                         const std::optional<Alphabet>& alphabet = std::nullopt);
void write_stream(const SymbolStream& s, const std::filesystem::path& path);

Json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace cauto::io
