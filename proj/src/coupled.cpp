#include "cauto/coupled.hpp"

#include <random>

#include "cauto/error.hpp"
#include "cauto/rng.hpp"

namespace cauto {

namespace {

void validate_rule(const ConditionalRule& rule, std::size_t own, std::size_t other,
                   const char* name) {
  std::size_t rows = 1;
  if (rule.given == ConditionalRule::Given::Self) rows = own;
  if (rule.given == ConditionalRule::Given::Other) rows = other;
  if (rule.table.rows() != rows || rule.table.cols() != own)
    throw InputError(std::string("conditional table for process ") + name + " has wrong shape");
  for (std::size_t r = 0; r < rows; ++r)
    if (!is_distribution(rule.table.row(r)))
      throw InputError(std::string("conditional row of process ") + name +
                       " is not a distribution");
}

std::size_t rule_row(const ConditionalRule& rule, Symbol self, Symbol other) {
  switch (rule.given) {
    case ConditionalRule::Given::Self: return self;
    case ConditionalRule::Given::Other: return other;
    case ConditionalRule::Given::None: break;
  }
  return 0;
}

}  // namespace

void CoupledSystemSpec::validate() const {
  validate_rule(rule_a, alphabet_a.size(), alphabet_b.size(), "A");
  validate_rule(rule_b, alphabet_b.size(), alphabet_a.size(), "B");
  if (initial_a >= alphabet_a.size() || initial_b >= alphabet_b.size())
    throw InputError("initial symbol out of range");
}

CoupledSystemSpec CoupledSystemSpec::unidirectional_example() {
  CoupledSystemSpec spec;
  spec.alphabet_a = Alphabet::binary();
  spec.alphabet_b = Alphabet::binary();
  spec.rule_a = {ConditionalRule::Given::Other, Matrix::from_rows({{0.8, 0.2}, {0.2, 0.8}})};
  spec.rule_b = {ConditionalRule::Given::Other, Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}})};
  return spec;
}

CoupledSystemSpec CoupledSystemSpec::independent(Distribution a, Distribution b) {
  CoupledSystemSpec spec;
  spec.alphabet_a = Alphabet::of_size(a.size());
  spec.alphabet_b = Alphabet::of_size(b.size());
  spec.rule_a = {ConditionalRule::Given::None, Matrix::from_rows({a})};
  spec.rule_b = {ConditionalRule::Given::None, Matrix::from_rows({b})};
  return spec;
}

std::pair<SymbolStream, SymbolStream> simulate_coupled(const CoupledSystemSpec& spec,
                                                      std::size_t length, std::uint64_t seed) {
  spec.validate();
  std::vector<Symbol> a(length), b(length);
  std::mt19937_64 rng(seed);
  if (length > 0) {
    a[0] = spec.initial_a;
    b[0] = spec.initial_b;
  }
  for (std::size_t k = 0; k + 1 < length; ++k) {
    const auto ra = rule_row(spec.rule_a, a[k], b[k]);
    const auto rb = rule_row(spec.rule_b, b[k], a[k]);
    a[k + 1] = static_cast<Symbol>(draw_index(rng, spec.rule_a.table.row(ra)));
    b[k + 1] = static_cast<Symbol>(draw_index(rng, spec.rule_b.table.row(rb)));
  }
  return {SymbolStream(spec.alphabet_a, std::move(a)), SymbolStream(spec.alphabet_b, std::move(b))};
}

}  // namespace cauto
