#include "cauto/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cauto/error.hpp"

namespace cauto::io {

// ---- quantization ----------------------------------------------------------

SymbolStream quantize_updown(std::span<const double> series) {
  if (series.size() < 2) throw InputError("up/down quantization needs at least two samples");
  std::vector<Symbol> out(series.size() - 1);
  for (std::size_t k = 0; k + 1 < series.size(); ++k) out[k] = series[k + 1] < series[k] ? 0 : 1;
  return SymbolStream(Alphabet::binary(), std::move(out));
}

SymbolStream quantize_quantile(std::span<const double> series, std::size_t k) {
  if (k < 2) throw InputError("quantile quantization needs k >= 2");
  if (series.size() < k) throw InputError("series shorter than the number of bins");
  std::vector<double> sorted(series.begin(), series.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() == sorted.back())
    throw DegenerateQuantizationError("all values are equal; quantiles are undefined");

  const double last = static_cast<double>(sorted.size() - 1);
  std::vector<double> bounds;
  for (std::size_t j = 1; j < k; ++j) {
    const double pos = last * static_cast<double>(j) / static_cast<double>(k);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    bounds.push_back(sorted[lo] + frac * (sorted[hi] - sorted[lo]));
  }
  std::vector<Symbol> out(series.size());
  for (std::size_t i = 0; i < series.size(); ++i)
    out[i] = static_cast<Symbol>(std::lower_bound(bounds.begin(), bounds.end(), series[i]) -
                                 bounds.begin());
  return SymbolStream(Alphabet::of_size(k), std::move(out));
}

// ---- tables ----------------------------------------------------------------

namespace {

std::string trim(std::string_view v) {
  const auto first = v.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = v.find_last_not_of(" \t\r\n");
  return std::string(v.substr(first, last - first + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return out;
}

bool is_missing(const std::string& cell) {
  std::string lower(cell);
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  return lower.empty() || lower == "na" || lower == "nan" || lower == "null";
}

std::optional<double> parse_number(const std::string& cell) {
  double v = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

bool looks_like_time_name(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(), ::tolower);
  static const std::set<std::string> names{"time", "date", "week", "t", "index", "timestamp"};
  return names.count(name) > 0;
}

}  // namespace

SeriesTable parse_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split_fields(line);
      break;
    }
  }
  if (header.empty()) throw FormatError("CSV has no header row");

  std::vector<std::vector<std::string>> cells;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw FormatError("CSV line " + std::to_string(line_no) + " has " +
                        std::to_string(fields.size()) + " fields, expected " +
                        std::to_string(header.size()));
    cells.push_back(std::move(fields));
  }

  bool time_column = header.size() > 1 && looks_like_time_name(header.front());
  if (header.size() > 1 && !time_column)
    for (const auto& row : cells)
      if (!is_missing(row.front()) && !parse_number(row.front())) {
        time_column = true;
        break;
      }

  SeriesTable table;
  const std::size_t first = time_column ? 1 : 0;
  for (std::size_t c = first; c < header.size(); ++c) {
    if (header[c].empty()) throw FormatError("CSV column " + std::to_string(c) + " has no name");
    table.names.push_back(header[c]);
  }
  if (table.names.empty()) throw FormatError("CSV has no data columns");
  table.columns.resize(table.names.size());

  for (std::size_t r = 0; r < cells.size(); ++r) {
    std::vector<double> values;
    bool missing = false;
    for (std::size_t c = first; c < header.size(); ++c) {
      const auto& cell = cells[r][c];
      if (is_missing(cell)) {
        missing = true;
        continue;
      }
      auto v = parse_number(cell);
      if (!v) throw FormatError("non-numeric value '" + cell + "' in column " + header[c]);
      values.push_back(*v);
    }
    if (missing) continue;
    for (std::size_t c = 0; c < values.size(); ++c) table.columns[c].push_back(values[c]);
    if (time_column) table.time_index.push_back(cells[r].front());
  }
  return table;
}

SeriesTable load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_csv(in);
}

// ---- machines --------------------------------------------------------------

double round_significant(double v, int digits) {
  if (v == 0.0 || !std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return std::strtod(buf, nullptr);
}

namespace {

Json rows_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (double v : m.row(i)) row.push_back(round_significant(v));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json delta_json(const LabeledGraph& g) {
  Json rows = Json::array();
  for (StateId q = 0; q < g.n_states(); ++q) {
    Json row = Json::array();
    for (Symbol s = 0; s < g.n_symbols(); ++s) row.push_back(g.next(q, s));
    rows.push_back(std::move(row));
  }
  return rows;
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw FormatError(std::string("machine document lacks field '") + name + "'");
  return j.at(name);
}

Alphabet alphabet_from(const Json& j, const char* name) {
  const auto& a = field(j, name);
  if (!a.is_array()) throw FormatError(std::string("'") + name + "' must be an array");
  std::vector<std::string> labels;
  for (const auto& l : a) {
    if (!l.is_string()) throw FormatError("alphabet labels must be strings");
    labels.push_back(l.get<std::string>());
  }
  try {
    return Alphabet(std::move(labels));
  } catch (const InputError& e) {
    throw FormatError(e.what());
  }
}

LabeledGraph graph_from(const Json& j, std::size_t n_symbols) {
  const auto& n = field(j, "n_states");
  if (!n.is_number_unsigned()) throw FormatError("'n_states' must be a non-negative integer");
  const auto n_states = n.get<std::size_t>();
  const auto& d = field(j, "delta");
  if (!d.is_array() || d.size() != n_states) throw FormatError("'delta' needs one row per state");
  std::vector<StateId> delta;
  for (const auto& row : d) {
    if (!row.is_array() || row.size() != n_symbols)
      throw FormatError("'delta' rows need one target per symbol");
    for (const auto& t : row) {
      if (!t.is_number_unsigned() || t.get<std::size_t>() >= n_states)
        throw FormatError("'delta' target out of range");
      delta.push_back(t.get<StateId>());
    }
  }
  try {
    return LabeledGraph(n_states, n_symbols, std::move(delta));
  } catch (const InputError& e) {
    throw FormatError(e.what());
  }
}

Matrix matrix_from(const Json& j, const char* name, std::size_t rows, std::size_t cols) {
  const auto& m = field(j, name);
  if (!m.is_array() || m.size() != rows)
    throw FormatError(std::string("'") + name + "' needs one row per state");
  Matrix out(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!m[i].is_array() || m[i].size() != cols)
      throw FormatError(std::string("'") + name + "' rows need one entry per symbol");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m[i][c].is_number()) throw FormatError("probabilities must be numbers");
      out(i, c) = m[i][c].get<double>();
    }
  }
  return out;
}

}  // namespace

Json to_json(const Pfsa& p) {
  Json j;
  j["alphabet"] = p.alphabet.labels();
  j["n_states"] = p.n_states();
  j["delta"] = delta_json(p.graph);
  j["morph"] = rows_json(p.morph);
  return j;
}

Json to_json(const Xpfsa& x) {
  Json j;
  j["alphabet"] = x.input_alphabet.labels();
  j["output_alphabet"] = x.output_alphabet.labels();
  j["n_states"] = x.n_states();
  j["delta"] = delta_json(x.graph);
  j["out_morph"] = rows_json(x.out_morph);
  return j;
}

Pfsa pfsa_from_json(const Json& j, const std::optional<Alphabet>& expected) {
  Pfsa p;
  p.alphabet = alphabet_from(j, "alphabet");
  if (expected && !(*expected == p.alphabet))
    throw InputError("machine alphabet does not match the expected alphabet");
  p.graph = graph_from(j, p.alphabet.size());
  p.morph = matrix_from(j, "morph", p.graph.n_states(), p.alphabet.size());
  return p;
}

Xpfsa xpfsa_from_json(const Json& j, const std::optional<Alphabet>& expected_input) {
  Xpfsa x;
  x.input_alphabet = alphabet_from(j, "alphabet");
  if (expected_input && !(*expected_input == x.input_alphabet))
    throw InputError("machine alphabet does not match the expected alphabet");
  x.output_alphabet = alphabet_from(j, "output_alphabet");
  x.graph = graph_from(j, x.input_alphabet.size());
  x.out_morph = matrix_from(j, "out_morph", x.graph.n_states(), x.output_alphabet.size());
  return x;
}

void dump_machine(const Pfsa& p, const std::filesystem::path& path) {
  write_text(path, to_json(p).dump(2) + "\n");
}

void dump_machine(const Xpfsa& x, const std::filesystem::path& path) {
  write_text(path, to_json(x).dump(2) + "\n");
}

Pfsa load_pfsa(const std::filesystem::path& path, const std::optional<Alphabet>& expected) {
  return pfsa_from_json(read_json(path), expected);
}

Xpfsa load_xpfsa(const std::filesystem::path& path, const std::optional<Alphabet>& expected_input) {
  return xpfsa_from_json(read_json(path), expected_input);
}

// ---- heaps, networks, specs -------------------------------------------------

Json heap_to_json(const DerivativeHeap& heap, const Alphabet& input) {
  Json out = Json::array();
  for (const auto& e : heap.entries) {
    Json entry;
    entry["string"] = format_word(input, e.word);
    entry["count"] = e.count;
    Json dist = Json::array();
    for (double v : e.dist) dist.push_back(round_significant(v));
    entry["distribution"] = std::move(dist);
    out.push_back(std::move(entry));
  }
  return out;
}

Json network_to_json(const CausalityNetwork& net) {
  Json j;
  j["nodes"] = net.nodes;
  Json arcs = Json::array();
  for (const auto& a : net.arcs) {
    Json arc;
    arc["from"] = net.nodes[a.from];
    arc["to"] = net.nodes[a.to];
    arc["gamma"] = round_significant(a.gamma);
    arc["n_states"] = a.model.n_states();
    arcs.push_back(std::move(arc));
  }
  j["arcs"] = std::move(arcs);
  Json missing = Json::array();
  for (const auto& m : net.missing) {
    Json entry;
    entry["from"] = net.nodes[m.from];
    entry["to"] = net.nodes[m.to];
    entry["kind"] = m.kind;
    entry["reason"] = m.reason;
    missing.push_back(std::move(entry));
  }
  j["missing"] = std::move(missing);
  return j;
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string network_to_dot(const CausalityNetwork& net) {
  std::ostringstream os;
  os << "digraph causality {\n";
  for (const auto& n : net.nodes) os << "  " << quoted(n) << ";\n";
  char label[32], width[32];
  for (const auto& a : net.arcs) {
    std::snprintf(label, sizeof label, "%.4f", a.gamma);
    std::snprintf(width, sizeof width, "%.4f", 0.5 + 10.0 * a.gamma);
    os << "  " << quoted(net.nodes[a.from]) << " -> " << quoted(net.nodes[a.to]) << " [label=\""
       << label << "\", penwidth=" << width << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_network(const CausalityNetwork& net, NetworkFormat format) {
  if (format == NetworkFormat::GraphText) return network_to_dot(net);
  return network_to_json(net).dump(2) + "\n";
}

namespace {

ConditionalRule rule_from(const Json& j, const char* self_name, const char* other_name,
                          std::size_t own, std::size_t other) {
  if (!j.is_object()) throw FormatError(std::string("process '") + self_name + "' must be an object");
  ConditionalRule rule;
  const std::string given = j.value("given", std::string("none"));
  std::size_t rows = 1;
  if (given == self_name) {
    rule.given = ConditionalRule::Given::Self;
    rows = own;
  } else if (given == other_name) {
    rule.given = ConditionalRule::Given::Other;
    rows = other;
  } else if (given != "none") {
    throw FormatError("'given' must be \"a\", \"b\" or \"none\"");
  }
  rule.table = matrix_from(j, "table", rows, own);
  return rule;
}

Symbol initial_from(const Json& j, const char* name, const Alphabet& a) {
  if (!j.contains(name)) return 0;
  const auto& v = j.at(name);
  if (v.is_string()) return a.index_of(v.get<std::string>());
  if (v.is_number_unsigned() && v.get<std::size_t>() < a.size()) return v.get<Symbol>();
  throw FormatError(std::string("'") + name + "' must be a symbol label");
}

const char* given_name(ConditionalRule::Given g, const char* self_name, const char* other_name) {
  switch (g) {
    case ConditionalRule::Given::Self: return self_name;
    case ConditionalRule::Given::Other: return other_name;
    case ConditionalRule::Given::None: break;
  }
  return "none";
}

}  // namespace

CoupledSystemSpec coupled_spec_from_json(const Json& j) {
  CoupledSystemSpec spec;
  spec.alphabet_a = alphabet_from(j, "alphabet_a");
  spec.alphabet_b = alphabet_from(j, "alphabet_b");
  spec.initial_a = initial_from(j, "initial_a", spec.alphabet_a);
  spec.initial_b = initial_from(j, "initial_b", spec.alphabet_b);
  spec.rule_a = rule_from(field(j, "a"), "a", "b", spec.alphabet_a.size(), spec.alphabet_b.size());
  spec.rule_b = rule_from(field(j, "b"), "b", "a", spec.alphabet_b.size(), spec.alphabet_a.size());
  spec.validate();
  return spec;
}

Json to_json(const CoupledSystemSpec& spec) {
  Json j;
  j["alphabet_a"] = spec.alphabet_a.labels();
  j["alphabet_b"] = spec.alphabet_b.labels();
  j["initial_a"] = spec.alphabet_a.label(spec.initial_a);
  j["initial_b"] = spec.alphabet_b.label(spec.initial_b);
  j["a"] = {{"given", given_name(spec.rule_a.given, "a", "b")}, {"table", rows_json(spec.rule_a.table)}};
  j["b"] = {{"given", given_name(spec.rule_b.given, "b", "a")}, {"table", rows_json(spec.rule_b.table)}};
  return j;
}

// ---- streams on disk ---------------------------------------------------------

std::string format_stream(const SymbolStream& s) { return s.to_string() + "\n"; }

SymbolStream parse_stream(std::string_view text, const std::optional<Alphabet>& alphabet) {
  const std::string body = trim(text);
  if (alphabet) return SymbolStream::parse(*alphabet, body);

  std::vector<std::string> labels;
  if (body.find(',') != std::string::npos) {
    for (auto& f : split_fields(body)) labels.push_back(std::move(f));
  } else {
    for (char c : body) labels.emplace_back(1, c);
  }
  std::vector<std::string> distinct(labels.begin(), labels.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const bool numeric = std::all_of(distinct.begin(), distinct.end(), [](const std::string& l) {
    return !l.empty() && std::all_of(l.begin(), l.end(), ::isdigit);
  });
  if (numeric)
    std::sort(distinct.begin(), distinct.end(), [](const std::string& a, const std::string& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  if (distinct.empty()) throw FormatError("stream file is empty");
  Alphabet a(std::move(distinct));
  std::vector<Symbol> data;
  data.reserve(labels.size());
  for (const auto& l : labels) data.push_back(a.index_of(l));
  return SymbolStream(std::move(a), std::move(data));
}

SymbolStream read_stream(const std::filesystem::path& path, const std::optional<Alphabet>& alphabet) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_stream(buf.str(), alphabet);
}

void write_stream(const SymbolStream& s, const std::filesystem::path& path) {
  write_text(path, format_stream(s));
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

}  // namespace cauto::io
