#include "qgids/patterns.hpp"

#include <stdexcept>

namespace qgids {

namespace {

// Offsets of C_M in the fixed enumeration order shared by all pattern reads.
std::vector<Site> cube_offsets(int d, int M) {
  std::vector<Site> offs;
  Site x = Site::zero(d);
  while (true) {
    offs.push_back(x);
    int j = 0;
    for (; j < d; ++j) {
      if (x[j] + 1 < M) {
        ++x[j];
        break;
      }
      x[j] = 0;
    }
    if (j == d) break;
  }
  return offs;
}

bool window_in_domain(const Colouring& col, const Site& x, const std::vector<Site>& offs) {
  for (const Site& o : offs)
    if (!col.defined_at(x + o)) return false;
  return true;
}

Pattern read_window(const Colouring& col, const Site& x, int M, const std::vector<Site>& offs) {
  Pattern p;
  p.d = x.dim();
  p.M = M;
  p.symbols.reserve(offs.size());
  for (const Site& o : offs) p.symbols.push_back(col.at(x + o));
  return p;
}

}  // namespace

Pattern pattern_at(const Colouring& colouring, const Site& x, int M) {
  if (M < 1) throw std::invalid_argument("pattern_at: M >= 1 required");
  std::vector<Site> offs = cube_offsets(x.dim(), M);
  if (!window_in_domain(colouring, x, offs)) throw std::invalid_argument("pattern_at: window leaves the sampled domain");
  return read_window(colouring, x, M, offs);
}

std::int64_t count_occurrences(const Pattern& p, const Colouring& colouring, const Region& q) {
  if (p.d != q.d) throw std::invalid_argument("count_occurrences: dimension mismatch");
  std::vector<Site> offs = cube_offsets(q.d, p.M);
  std::int64_t n = 0;
  for (const Site& x : q.sites) {
    if (!window_in_domain(colouring, x, offs)) continue;
    if (read_window(colouring, x, p.M, offs) == p) ++n;
  }
  return n;
}

double FrequencyTable::frequency(const Pattern& p) const {
  auto it = counts.find(p);
  if (it == counts.end() || admissible_positions == 0) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(admissible_positions);
}

FrequencyTable frequency_table(const Colouring& colouring, const Region& q, int M) {
  if (M < 1) throw std::invalid_argument("frequency_table: M >= 1 required");
  FrequencyTable t;
  t.d = q.d;
  t.M = M;
  std::vector<Site> offs = cube_offsets(q.d, M);
  for (const Site& x : q.sites) {
    if (!window_in_domain(colouring, x, offs)) continue;
    ++t.admissible_positions;
    ++t.counts[read_window(colouring, x, M, offs)];
  }
  return t;
}

}  // namespace qgids
