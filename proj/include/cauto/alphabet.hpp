#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cauto {

using Symbol = std::uint16_t;
using StateId = std::uint32_t;

// A finite string over some alphabet, stored as symbol indices.
using Word = std::vector<Symbol>;

/// Ordered set of distinct symbol labels. Index <-> label is a bijection.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  /// Labels "0".."k-1".
  static Alphabet of_size(std::size_t k);
  static Alphabet binary() { return of_size(2); }

  std::size_t size() const noexcept { return labels_.size(); }
  const std::string& label(Symbol s) const { return labels_.at(s); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<Symbol> find(std::string_view label) const;
  Symbol index_of(std::string_view label) const;  // throws InputError

  /// True when every label is a single character and there are at most ten
  /// of them, so streams can be written without separators.
  bool compact() const noexcept;

  bool operator==(const Alphabet& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Symbol> index_;
};

/// Finite symbol sequence over a declared alphabet.
class SymbolStream {
 public:
  SymbolStream() = default;
  SymbolStream(Alphabet alphabet, std::vector<Symbol> data);

  /// Parses single-character labels ("0110") or comma-separated labels.
  static SymbolStream parse(const Alphabet& alphabet, std::string_view text);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  std::span<const Symbol> symbols() const noexcept { return data_; }
  const std::vector<Symbol>& data() const noexcept { return data_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  Symbol operator[](std::size_t i) const { return data_[i]; }

  std::string to_string() const;

 private:
  Alphabet alphabet_;
  std::vector<Symbol> data_;
};

/// Parses a word such as "01" or "a,b" against an alphabet.
Word parse_word(const Alphabet& alphabet, std::string_view text);
std::string format_word(const Alphabet& alphabet, std::span<const Symbol> word);

}  // namespace cauto
