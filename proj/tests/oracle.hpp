#pragma once

// Independent reference computations used to derive expected test values.
// Everything here works over GF(p) with plain dense elimination.

#include <cstdint>
#include <map>
#include <tuple>
#include <vector>

#include "icm/bipoly.hpp"

namespace oracle {

using Vec = std::vector<std::uint64_t>;
using Col = std::vector<icm::BiPoly>;

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = static_cast<std::uint64_t>((unsigned __int128)r * a % p);
    a = static_cast<std::uint64_t>((unsigned __int128)a * a % p);
    e >>= 1;
  }
  return r;
}

inline std::size_t rank_mod(std::vector<Vec> rows, std::uint64_t p) {
  std::size_t rank = 0;
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < n && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const std::uint64_t inv = powmod(rows[rank][c], p - 2, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      const std::uint64_t f = static_cast<std::uint64_t>((unsigned __int128)rows[i][c] * inv % p);
      for (std::size_t k = c; k < n; ++k)
        rows[i][k] = (rows[i][k] + p - static_cast<std::uint64_t>((unsigned __int128)f * rows[rank][k] % p)) % p;
    }
    ++rank;
  }
  return rank;
}

/// Coefficients of f truncated below degree k, laid out coordinate-major.
struct Layout {
  int k, r;
  std::map<std::tuple<int, int, int>, std::size_t> pos;
  Layout(int k_, int r_) : k(k_), r(r_) {
    for (int c = 0; c < r; ++c)
      for (int a = 0; a < k; ++a)
        for (int b = 0; a + b < k; ++b) pos.emplace(std::make_tuple(c, a, b), pos.size());
  }
  std::size_t size() const { return pos.size(); }
};

inline std::uint64_t coeff_mod(const icm::FieldElement& v, std::uint64_t p) { return v.flat_mod()[0] % p; }

/// dim F/(M + m^k F) by spanning all monomial multiples.
inline int truncated_colength(const std::vector<Col>& gens, int r, int k, std::uint64_t p) {
  Layout L(k, r);
  std::vector<Vec> rows;
  for (const auto& g : gens)
    for (int i = 0; i < k; ++i)
      for (int j = 0; i + j < k; ++j) {
        Vec v(L.size(), 0);
        bool any = false;
        for (int c = 0; c < r; ++c)
          for (const auto& [e, val] : g[static_cast<std::size_t>(c)].terms()) {
            const int a = e.first + i, b = e.second + j;
            if (a + b >= k) continue;
            v[L.pos.at({c, a, b})] = coeff_mod(val, p);
            any = true;
          }
        if (any) rows.push_back(std::move(v));
      }
  return static_cast<int>(L.size() - rank_mod(rows, p));
}

/// Colength, found as the first truncated value that repeats at the next level.
inline int colength(const std::vector<Col>& gens, int r, std::uint64_t p, int max_level = 30) {
  int prev = truncated_colength(gens, r, 1, p);
  for (int k = 2; k <= max_level; ++k) {
    int cur = truncated_colength(gens, r, k, p);
    if (cur == prev) return cur;
    prev = cur;
  }
  return -1;
}

/// Membership of f in M, tested modulo m^k F for k well past stabilization.
inline bool member(const Col& f, const std::vector<Col>& gens, int r, int k, std::uint64_t p) {
  std::vector<Col> with = gens;
  with.push_back(f);
  return truncated_colength(with, r, k, p) == truncated_colength(gens, r, k, p);
}

/// Number of minimal generators: dim (M + m^k F) / (mM + m^k F) for large k.
inline int minimal_count(const std::vector<Col>& gens, int r, int k, std::uint64_t p) {
  // mM is spanned by x*g and y*g
  std::vector<Col> mm;
  for (const auto& g : gens)
    for (int v = 0; v < 2; ++v) {
      Col c;
      for (const auto& f : g) c.push_back(f * icm::BiPoly::variable(f.tower(), v, f.vars()));
      mm.push_back(c);
    }
  return truncated_colength(mm, r, k, p) - truncated_colength(gens, r, k, p);
}

}  // namespace oracle
