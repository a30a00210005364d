#include "cauto/alphabet.hpp"

#include <algorithm>
#include <string>

#include "cauto/error.hpp"

namespace cauto {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw InputError("alphabet must have at least one symbol");
  if (labels_.size() > 65535) throw InputError("alphabet too large");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw InputError("empty symbol label");
    if (labels_[i].find(',') != std::string::npos)
      throw InputError("symbol label may not contain ','");
    auto [it, inserted] = index_.emplace(labels_[i], static_cast<Symbol>(i));
    if (!inserted) throw InputError("duplicate symbol label '" + labels_[i] + "'");
  }
}

Alphabet Alphabet::of_size(std::size_t k) {
  std::vector<std::string> labels;
  labels.reserve(k);
  for (std::size_t i = 0; i < k; ++i) labels.push_back(std::to_string(i));
  return Alphabet(std::move(labels));
}

std::optional<Symbol> Alphabet::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Symbol Alphabet::index_of(std::string_view label) const {
  if (auto s = find(label)) return *s;
  throw InputError("unknown symbol '" + std::string(label) + "'");
}

bool Alphabet::compact() const noexcept {
  return labels_.size() <= 10 &&
         std::all_of(labels_.begin(), labels_.end(),
                     [](const std::string& l) { return l.size() == 1; });
}

SymbolStream::SymbolStream(Alphabet alphabet, std::vector<Symbol> data)
    : alphabet_(std::move(alphabet)), data_(std::move(data)) {
  const auto k = alphabet_.size();
  for (Symbol s : data_)
    if (s >= k) throw InputError("symbol index out of range for alphabet");
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word out;
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find(',', start);
      if (end == std::string_view::npos) end = text.size();
      out.push_back(alphabet.index_of(text.substr(start, end - start)));
      start = end + 1;
    }
    return out;
  }
  out.reserve(text.size());
  for (char c : text) out.push_back(alphabet.index_of(std::string_view(&c, 1)));
  return out;
}

std::string format_word(const Alphabet& alphabet, std::span<const Symbol> word) {
  std::string out;
  const bool compact = alphabet.compact();
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (!compact && i > 0) out += ',';
    out += alphabet.label(word[i]);
  }
  return out;
}

SymbolStream SymbolStream::parse(const Alphabet& alphabet, std::string_view text) {
  return SymbolStream(alphabet, parse_word(alphabet, text));
}

std::string SymbolStream::to_string() const { return format_word(alphabet_, data_); }

}  // namespace cauto
