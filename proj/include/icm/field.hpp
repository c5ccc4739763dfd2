#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace icm {

using Rational = mpq_class;
using Integer = mpz_class;

class FieldTower;
class FieldElement;
using Tower = std::shared_ptr<const FieldTower>;

enum class BaseKind { Rationals, Prime };

bool is_prime_u64(std::uint64_t n);

/// Arithmetic in GF(p), p < 2^63.
struct PrimeOps {
  using value_type = std::uint64_t;
  std::uint64_t p;

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p; }
  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p ? s - p : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type mul(value_type a, value_type b) const {
    if (p < (std::uint64_t{1} << 32)) return (a * b) % p;
    return static_cast<value_type>((static_cast<unsigned __int128>(a) * b) % p);
  }
  value_type inv(value_type a) const;
  value_type from_int(long long v) const {
    long long m = static_cast<long long>(p);
    long long r = v % m;
    return static_cast<value_type>(r < 0 ? r + m : r);
  }
};

struct RationalOps {
  using value_type = Rational;

  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const { return 1 / a; }
  value_type from_int(long long v) const { return Rational(static_cast<long>(v)); }
};

/// An exact coefficient field: Q or GF(p), followed by a chain of simple
/// algebraic extensions. Elements are stored as flat coefficient vectors over
/// the base field in the nested power basis of the generators.
class FieldTower {
public:
  struct Level {
    std::string name;
    std::size_t degree = 1;      // degree of this simple extension
    std::size_t block = 1;       // flat size of the level below
    std::vector<std::uint64_t> poly_mod;  // non-leading coefficients f_0..f_{d-1}, flattened
    std::vector<Rational> poly_rat;
  };

  static Tower rationals();
  static Tower prime_field(std::uint64_t p);

  /// Appends a level defined by a monic polynomial over `base` (coefficients
  /// low to high, leading 1 included). Irreducibility is the caller's
  /// responsibility; use extend_tower() for the checked version.
  static Tower extend_unchecked(const Tower& base, const std::vector<FieldElement>& monic_poly,
                                const std::string& name);

  BaseKind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }
  PrimeOps prime_ops() const { return PrimeOps{p_}; }
  std::size_t degree() const { return degree_; }
  std::size_t level_count() const { return levels_.size(); }
  const std::vector<Level>& levels() const { return levels_; }
  const Tower& parent() const { return parent_; }
  const std::string& generator_name() const;
  /// Minimal polynomial of the top generator over the parent, low to high, monic.
  const std::vector<FieldElement>& minimal_poly() const { return min_poly_; }
  std::vector<std::string> generator_names() const;

  bool is_base() const { return levels_.empty(); }
  bool same_as(const FieldTower& other) const;
  /// True if this tower is `other` or a prefix (sub-tower) of it.
  bool embeds_into(const FieldTower& other) const;
  std::string describe() const;

  template <class Ops>
  void mul_flat(const Ops& ops, const typename Ops::value_type* a, const typename Ops::value_type* b,
                typename Ops::value_type* out) const {
    mul_level(ops, levels_.size(), a, b, out);
  }
  template <class Ops>
  void inv_flat(const Ops& ops, const typename Ops::value_type* a, typename Ops::value_type* out) const;

  template <class Ops>
  const std::vector<typename Ops::value_type>& level_poly(const Ops&, std::size_t level) const;

private:
  template <class Ops>
  void mul_level(const Ops& ops, std::size_t level, const typename Ops::value_type* a,
                 const typename Ops::value_type* b, typename Ops::value_type* out) const;

  BaseKind kind_ = BaseKind::Rationals;
  std::uint64_t p_ = 0;
  std::size_t degree_ = 1;
  std::vector<Level> levels_;
  Tower parent_;
  std::vector<FieldElement> min_poly_;
};

Tower common_tower(const Tower& a, const Tower& b);

class FieldElement {
public:
  FieldElement() = default;
  explicit FieldElement(Tower tower);

  static FieldElement from_int(const Tower& tower, long long v);
  static FieldElement from_rational(const Tower& tower, const Rational& q);
  /// The generator adjoined at `level` (1-based; level 1 is the first extension).
  static FieldElement generator(const Tower& tower, std::size_t level);
  static FieldElement from_flat_mod(const Tower& tower, std::vector<std::uint64_t> c);
  static FieldElement from_flat_rat(const Tower& tower, std::vector<Rational> c);

  const Tower& tower() const { return t_; }
  bool valid() const { return t_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;
  /// Lies in the base field (only the constant flat coefficient may be nonzero).
  bool in_base() const;

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;
  FieldElement pow(const Integer& e) const;
  bool operator==(const FieldElement& o) const;
  bool operator!=(const FieldElement& o) const { return !(*this == o); }

  FieldElement embed(const Tower& target) const;

  const std::vector<std::uint64_t>& flat_mod() const { return m_; }
  const std::vector<Rational>& flat_rat() const { return q_; }

  /// Canonical text: base values in symmetric range for GF(p), p/q over Q,
  /// generators by name. Parenthesised whenever it has more than one term.
  std::string to_string() const;
  bool needs_parens() const;
  std::size_t hash() const;

private:
  Tower t_;
  std::vector<std::uint64_t> m_;
  std::vector<Rational> q_;
};

}  // namespace icm
