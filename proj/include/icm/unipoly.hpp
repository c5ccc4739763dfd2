#pragma once

#include <string>
#include <utility>
#include <vector>

#include "icm/config.hpp"
#include "icm/field.hpp"

namespace icm {

/// Dense univariate polynomial over a field tower, coefficients low to high.
/// The zero polynomial has no coefficients and degree -1.
class UniPoly {
public:
  UniPoly() = default;
  UniPoly(Tower tower, std::string var = "t");
  UniPoly(Tower tower, std::vector<FieldElement> coeffs, std::string var = "t");

  static UniPoly constant(const FieldElement& c, std::string var = "t");
  static UniPoly monomial(const FieldElement& c, std::size_t deg, std::string var = "t");
  /// t - c
  static UniPoly linear_root(const FieldElement& c, std::string var = "t");
  static UniPoly from_ints(const Tower& tower, const std::vector<long long>& coeffs, std::string var = "t");

  const Tower& tower() const { return t_; }
  const std::string& var() const { return var_; }
  UniPoly with_var(std::string v) const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  FieldElement coeff(std::size_t i) const;
  FieldElement lead() const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator-() const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const FieldElement& s) const;
  bool operator==(const UniPoly& o) const;
  bool operator!=(const UniPoly& o) const { return !(*this == o); }

  /// Quotient and remainder; throws ZeroDivisor for a zero divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
  UniPoly operator/(const UniPoly& d) const { return divmod(d).first; }
  UniPoly operator%(const UniPoly& d) const { return divmod(d).second; }

  UniPoly monic() const;
  UniPoly derivative() const;
  FieldElement eval(const FieldElement& x) const;
  /// Substitute t -> t + shift.
  UniPoly shift(const FieldElement& shift) const;
  UniPoly embed(const Tower& target) const;
  UniPoly powmod(const Integer& e, const UniPoly& mod) const;

  std::string to_string() const;

private:
  void trim();

  Tower t_;
  std::vector<FieldElement> c_;
  std::string var_ = "t";
};

/// Monic gcd (zero if both inputs are zero).
UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct FactorPower {
  UniPoly factor;  // monic irreducible
  int multiplicity;
};

/// Complete factorization into monic irreducibles, sorted by (degree, text).
/// Over GF(p) towers: square-free, distinct-degree and equal-degree splitting.
/// Over Q: square-free decomposition followed by modular factoring and
/// recombination. Over Q-towers: norm-based reduction to the level below.
std::vector<FactorPower> factor_univariate(const UniPoly& p, const Config& cfg = default_config());

bool is_irreducible(const UniPoly& p, const Config& cfg = default_config());

/// Adjoins a root of the monic irreducible `p` under the generator name `name`.
Tower extend_tower(const Tower& k, const UniPoly& p, const std::string& name,
                   const Config& cfg = default_config());

/// Enumerates every element of a finite tower (only for small sizes).
std::vector<FieldElement> enumerate_finite_field(const Tower& t, std::size_t limit);

}  // namespace icm
