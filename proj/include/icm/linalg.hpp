#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "icm/field.hpp"

namespace icm {

/// Scalar arithmetic on whole tower elements, for towers of degree > 1.
struct TowerOps {
  using value_type = FieldElement;
  Tower t;

  value_type zero() const { return FieldElement(t); }
  value_type one() const { return FieldElement::from_int(t, 1); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return a.inverse(); }
};

inline std::uint64_t to_value(const PrimeOps&, const FieldElement& e) { return e.flat_mod()[0]; }
inline Rational to_value(const RationalOps&, const FieldElement& e) { return e.flat_rat()[0]; }
inline FieldElement to_value(const TowerOps& ops, const FieldElement& e) { return e.embed(ops.t); }

inline FieldElement from_value(const PrimeOps&, const Tower& t, std::uint64_t v) {
  std::vector<std::uint64_t> c(t->degree(), 0);
  c[0] = v;
  return FieldElement::from_flat_mod(t, std::move(c));
}
inline FieldElement from_value(const RationalOps&, const Tower& t, const Rational& v) {
  std::vector<Rational> c(t->degree(), Rational(0));
  c[0] = v;
  return FieldElement::from_flat_rat(t, std::move(c));
}
inline FieldElement from_value(const TowerOps&, const Tower&, const FieldElement& v) { return v; }

/// Calls `f` with the cheapest exact scalar arithmetic for `t`.
template <class F>
decltype(auto) with_ops(const Tower& t, F&& f) {
  if (t->degree() == 1) {
    if (t->kind() == BaseKind::Prime) return f(t->prime_ops());
    return f(RationalOps{});
  }
  return f(TowerOps{t});
}

/// Row echelon form with leftmost pivots, built incrementally. Rows are kept
/// dense with the pivot normalized to one; every row vanishes left of its pivot.
template <class Ops>
class Echelon {
public:
  using V = typename Ops::value_type;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Echelon(Ops ops, std::size_t dim) : ops_(std::move(ops)), dim_(dim), where_(dim, npos) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  const Ops& ops() const { return ops_; }

  /// Reduces `v` by the stored rows. Returns the first column below `limit`
  /// that holds a nonzero entry without a pivot (npos if none remain there).
  /// With stop_early the reduction halts at that column.
  std::size_t reduce(std::vector<V>& v, std::size_t limit, bool stop_early) const {
    std::size_t first_free = npos;
    for (std::size_t c = 0; c < limit; ++c) {
      if (ops_.is_zero(v[c])) continue;
      std::size_t r = where_[c];
      if (r == npos) {
        if (first_free == npos) first_free = c;
        if (stop_early) return first_free;
        continue;
      }
      const V f = v[c];
      const std::vector<V>& row = rows_[r];
      for (std::size_t k = c; k < v.size(); ++k)
        if (!ops_.is_zero(row[k])) v[k] = ops_.sub(v[k], ops_.mul(f, row[k]));
    }
    return first_free;
  }

  bool contains(std::vector<V> v) const {
    return reduce(v, dim_, true) == npos;
  }

  /// Adds `v` to the span; returns false when it was already dependent
  /// (with respect to the columns below `limit`).
  bool insert(std::vector<V> v, std::size_t limit) {
    std::size_t c = reduce(v, limit, true);
    if (c == npos) return false;
    const V inv = ops_.inv(v[c]);
    for (std::size_t k = c; k < v.size(); ++k)
      if (!ops_.is_zero(v[k])) v[k] = ops_.mul(v[k], inv);
    where_[c] = rows_.size();
    rows_.push_back(std::move(v));
    return true;
  }
  bool insert(std::vector<V> v) { return insert(std::move(v), dim_); }

  /// Number of pivots in columns [0, col).
  std::size_t pivots_below(std::size_t col) const {
    std::size_t n = 0;
    for (std::size_t c = 0; c < col && c < dim_; ++c) n += where_[c] != npos;
    return n;
  }

  bool has_pivot(std::size_t col) const { return where_[col] != npos; }
  const std::vector<std::vector<V>>& rows() const { return rows_; }

private:
  Ops ops_;
  std::size_t dim_;
  std::vector<std::size_t> where_;
  std::vector<std::vector<V>> rows_;
};

}  // namespace icm
