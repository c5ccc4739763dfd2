#pragma once

#include <array>
#include <climits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "icm/error.hpp"
#include "icm/field.hpp"
#include "icm/unipoly.hpp"

namespace icm {

/// Sentinel for the order of the zero polynomial and of non-finite lengths.
inline constexpr int kInfinity = INT_MAX;

using Exponent = std::pair<int, int>;

/// Sparse polynomial in two variables over a field tower.
class BiPoly {
public:
  BiPoly() = default;
  explicit BiPoly(Tower tower, std::array<std::string, 2> vars = {"x", "y"});

  static BiPoly constant(const FieldElement& c, std::array<std::string, 2> vars = {"x", "y"});
  static BiPoly monomial(const FieldElement& c, int a, int b, std::array<std::string, 2> vars = {"x", "y"});
  static BiPoly from_int(const Tower& t, long long c, std::array<std::string, 2> vars = {"x", "y"});
  /// The first (i = 0) or second (i = 1) variable.
  static BiPoly variable(const Tower& t, int i, std::array<std::string, 2> vars = {"x", "y"});

  const Tower& tower() const { return t_; }
  const std::array<std::string, 2>& vars() const { return vars_; }
  BiPoly with_vars(std::array<std::string, 2> v) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponent, FieldElement>& terms() const { return terms_; }
  FieldElement coeff(int a, int b) const;
  /// Minimal total degree of the support; kInfinity for zero.
  int ord() const;
  int total_degree() const;
  int degree_in(int var) const;
  FieldElement constant_term() const { return coeff(0, 0); }

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly operator*(const FieldElement& s) const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator-=(const BiPoly& o);
  bool operator==(const BiPoly& o) const;
  bool operator!=(const BiPoly& o) const { return !(*this == o); }
  BiPoly pow(int e) const;

  /// Multiplies by x^a y^b.
  BiPoly shifted(int a, int b) const;
  /// Drops every term of total degree >= k.
  BiPoly truncated(int k) const;
  /// Homogeneous component of total degree d.
  BiPoly homogeneous_part(int d) const;
  /// Product truncated below total degree k.
  BiPoly mul_truncated(const BiPoly& o, int k) const;
  /// Ring homomorphism sending the two variables to `x` and `y`.
  BiPoly substitute(const BiPoly& x, const BiPoly& y) const;
  /// Exact division by x^a y^b; throws if some term is not divisible.
  BiPoly divide_monomial(int a, int b) const;
  BiPoly embed(const Tower& target) const;
  /// f(1, t) of a polynomial, as a univariate polynomial in t.
  UniPoly dehomogenize(const std::string& var = "t") const;
  /// f(x, 0) or f(0, y) along the chosen coordinate axis, as a polynomial in that variable.
  UniPoly restrict_variable(int var) const;

  std::string to_string() const;

  void add_term(int a, int b, const FieldElement& c);

private:
  Tower t_;
  std::array<std::string, 2> vars_ = {"x", "y"};
  std::map<Exponent, FieldElement> terms_;
};

/// Quotient when `b` divides `a` exactly in k[x, y], nothing otherwise.
std::optional<BiPoly> divide_exact(const BiPoly& a, const BiPoly& b);

/// A greatest common divisor in k[x, y], normalized to have leading
/// coefficient 1 in the lexicographic order (y first, then x).
BiPoly gcd(const BiPoly& a, const BiPoly& b);

/// Parse failure with the 1-based column where it happened.
class ParseFailure : public Error {
public:
  ParseFailure(int column, const std::string& what)
      : Error(ErrorCode::ParseError, "column " + std::to_string(column) + ": " + what), column_(column), msg_(what) {}
  int column() const { return column_; }
  const std::string& message() const { return msg_; }

private:
  int column_;
  std::string msg_;
};

/// Parses sums, products, powers and parentheses of integer and p/q constants,
/// the two variables, and the tower's generator names.
BiPoly parse_bipoly(const std::string& text, const Tower& tower, const std::array<std::string, 2>& vars = {"x", "y"});

}  // namespace icm
