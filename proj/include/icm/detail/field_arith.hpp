#pragma once

#include <type_traits>
#include <vector>

#include "icm/error.hpp"
#include "icm/field.hpp"

namespace icm {

template <class Ops>
const std::vector<typename Ops::value_type>& FieldTower::level_poly(const Ops&, std::size_t level) const {
  if constexpr (std::is_same_v<Ops, PrimeOps>) {
    return levels_[level].poly_mod;
  } else {
    return levels_[level].poly_rat;
  }
}

template <class Ops>
void FieldTower::mul_level(const Ops& ops, std::size_t level, const typename Ops::value_type* a,
                           const typename Ops::value_type* b, typename Ops::value_type* out) const {
  using V = typename Ops::value_type;
  if (level == 0) {
    out[0] = ops.mul(a[0], b[0]);
    return;
  }
  const Level& lv = levels_[level - 1];
  const std::size_t d = lv.degree;
  const std::size_t blk = lv.block;
  const auto& f = level_poly(ops, level - 1);
  auto block_zero = [&](const V* x) {
    for (std::size_t k = 0; k < blk; ++k)
      if (!ops.is_zero(x[k])) return false;
    return true;
  };
  std::vector<V> tmp((2 * d - 1) * blk, ops.zero());
  std::vector<V> prod(blk, ops.zero());
  for (std::size_t i = 0; i < d; ++i) {
    if (block_zero(a + i * blk)) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (block_zero(b + j * blk)) continue;
      mul_level(ops, level - 1, a + i * blk, b + j * blk, prod.data());
      V* dst = tmp.data() + (i + j) * blk;
      for (std::size_t k = 0; k < blk; ++k) dst[k] = ops.add(dst[k], prod[k]);
    }
  }
  for (std::size_t k = 2 * d - 1; k-- > d;) {
    const V* c = tmp.data() + k * blk;
    if (block_zero(c)) continue;
    for (std::size_t i = 0; i < d; ++i) {
      if (block_zero(f.data() + i * blk)) continue;
      mul_level(ops, level - 1, c, f.data() + i * blk, prod.data());
      V* dst = tmp.data() + (k - d + i) * blk;
      for (std::size_t q = 0; q < blk; ++q) dst[q] = ops.sub(dst[q], prod[q]);
    }
  }
  for (std::size_t k = 0; k < d * blk; ++k) out[k] = tmp[k];
}

template <class Ops>
void FieldTower::inv_flat(const Ops& ops, const typename Ops::value_type* a,
                          typename Ops::value_type* out) const {
  using V = typename Ops::value_type;
  const std::size_t n = degree_;
  if (n == 1) {
    if (ops.is_zero(a[0])) throw Error(ErrorCode::ZeroDivisor, "inverse of zero");
    out[0] = ops.inv(a[0]);
    return;
  }
  // Solve (a * x = 1) as an n x n linear system over the base field.
  std::vector<V> mat(n * (n + 1), ops.zero());
  std::vector<V> basis(n, ops.zero()), col(n, ops.zero());
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(basis.begin(), basis.end(), ops.zero());
    basis[j] = ops.one();
    mul_flat(ops, a, basis.data(), col.data());
    for (std::size_t i = 0; i < n; ++i) mat[i * (n + 1) + j] = col[i];
  }
  mat[0 * (n + 1) + n] = ops.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (!ops.is_zero(mat[r * (n + 1) + c])) {
        piv = r;
        break;
      }
    if (piv == n) throw Error(ErrorCode::ZeroDivisor, "element is not invertible in tower");
    if (piv != c)
      for (std::size_t k = 0; k <= n; ++k) std::swap(mat[piv * (n + 1) + k], mat[c * (n + 1) + k]);
    V iv = ops.inv(mat[c * (n + 1) + c]);
    for (std::size_t k = c; k <= n; ++k) mat[c * (n + 1) + k] = ops.mul(mat[c * (n + 1) + k], iv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || ops.is_zero(mat[r * (n + 1) + c])) continue;
      V fct = mat[r * (n + 1) + c];
      for (std::size_t k = c; k <= n; ++k)
        mat[r * (n + 1) + k] = ops.sub(mat[r * (n + 1) + k], ops.mul(fct, mat[c * (n + 1) + k]));
    }
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = mat[i * (n + 1) + n];
}

}  // namespace icm
