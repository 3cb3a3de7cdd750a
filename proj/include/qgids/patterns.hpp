#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qgids/ensemble.hpp"

namespace qgids {

/// Cube pattern: symbols over C_M anchored at the origin (translation
/// canonical form). Two window reads compare equal iff their anchored
/// symbol arrays agree; Gamma is the translation group only.
struct Pattern {
  int d = 1;
  int M = 1;
  std::vector<SiteSymbol> symbols;  // row-major over C_M in site order

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.d == b.d && a.M == b.M && a.symbols == b.symbols;
  }
  friend bool operator<(const Pattern& a, const Pattern& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.M != b.M) return a.M < b.M;
    return a.symbols < b.symbols;
  }
};

/// Anchored window read at x; the window x + C_M must lie in the domain.
Pattern pattern_at(const Colouring& colouring, const Site& x, int M);

/// Occurrences of P among positions x in Q whose full window lies inside
/// the sampled domain.
std::int64_t count_occurrences(const Pattern& p, const Colouring& colouring, const Region& q);

struct FrequencyTable {
  int d = 1;
  int M = 1;
  std::int64_t admissible_positions = 0;
  std::map<Pattern, std::int64_t> counts;

  double frequency(const Pattern& p) const;
};

FrequencyTable frequency_table(const Colouring& colouring, const Region& q, int M);

}  // namespace qgids
