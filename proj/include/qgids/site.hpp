#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace qgids {

inline constexpr int kMaxDim = 8;

/// A lattice point of Z^d. Coordinates beyond d are kept at zero so that
/// comparison and hashing can ignore the dimension.
struct Site {
  std::array<int32_t, kMaxDim> c{};
  int8_t d = 0;

  Site() = default;
  Site(std::initializer_list<int32_t> coords) {
    if (coords.size() == 0 || coords.size() > kMaxDim)
      throw std::invalid_argument("Site: dimension must be in [1," + std::to_string(kMaxDim) + "]");
    d = static_cast<int8_t>(coords.size());
    int i = 0;
    for (int32_t v : coords) c[i++] = v;
  }
  static Site zero(int dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Site: bad dimension");
    Site s;
    s.d = static_cast<int8_t>(dim);
    return s;
  }

  int dim() const { return d; }
  int32_t operator[](int j) const { return c[static_cast<size_t>(j)]; }
  int32_t& operator[](int j) { return c[static_cast<size_t>(j)]; }

  /// Neighbor x + sign * e_j with j in 1..d.
  Site shifted(int j, int32_t sign) const {
    Site s = *this;
    s.c[static_cast<size_t>(j - 1)] += sign;
    return s;
  }
  Site operator+(const Site& t) const {
    Site s = *this;
    for (int j = 0; j < d; ++j) s.c[static_cast<size_t>(j)] += t.c[static_cast<size_t>(j)];
    return s;
  }
  Site operator-(const Site& t) const {
    Site s = *this;
    for (int j = 0; j < d; ++j) s.c[static_cast<size_t>(j)] -= t.c[static_cast<size_t>(j)];
    return s;
  }

  friend bool operator==(const Site& a, const Site& b) { return a.d == b.d && a.c == b.c; }
  friend bool operator!=(const Site& a, const Site& b) { return !(a == b); }
  friend bool operator<(const Site& a, const Site& b) {
    if (a.d != b.d) return a.d < b.d;
    return a.c < b.c;
  }

  std::string to_string() const {
    std::string out = "(";
    for (int j = 0; j < d; ++j) {
      if (j) out += ",";
      out += std::to_string(c[static_cast<size_t>(j)]);
    }
    return out + ")";
  }
};

}  // namespace qgids
