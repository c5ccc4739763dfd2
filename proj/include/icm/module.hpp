#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "icm/config.hpp"
#include "icm/linalg.hpp"
#include "icm/ring.hpp"

namespace icm {

using Column = std::vector<BiPoly>;

class TruncationSpace;

/// Finitely generated torsion-free module given by generator columns inside
/// F0 = ring^rank with the standard basis.
class TFModule {
public:
  TFModule() = default;
  /// Checks that every column has `rank` entries over the ring's field and
  /// that the matrix has full rank (unless rank or column count is zero).
  TFModule(LocalRing ring, int rank, std::vector<Column> columns);

  const LocalRing& ring() const { return ring_; }
  int rank() const { return rank_; }
  const std::vector<Column>& columns() const { return cols_; }
  std::size_t column_count() const { return cols_.size(); }
  const BiPoly& entry(int row, std::size_t col) const { return cols_[col][static_cast<std::size_t>(row)]; }
  int max_degree() const;

  /// Same module with a known-finite colength; skips the minors test.
  TFModule with_finite_hint() const;
  std::string to_string() const;

  struct Cache {
    std::mutex mu;
    std::optional<bool> finite;
    std::optional<int> colength;
    std::optional<int> stable_level;
    std::shared_ptr<const TruncationSpace> space;
    std::optional<int> order;
  };
  Cache& cache() const { return *cache_; }

private:
  LocalRing ring_;
  int rank_ = 0;
  std::vector<Column> cols_;
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

using Ideal = TFModule;

/// Quotients F0 / (M + m^K F0) as dense vector spaces. The basis is ordered by
/// total degree, then by y-exponent (so x^d comes first), then coordinate.
class TruncationSpace {
public:
  TruncationSpace(const Tower& field, int rank, int level);

  int level() const { return level_; }
  int rank() const { return rank_; }
  std::size_t dimension() const;
  static std::size_t index(int a, int b, int coord, int rank);
  static std::size_t dimension_at(int level, int rank);

  /// Adds every multiple mu * g with deg mu >= min_multiplier_degree.
  void add_module(const std::vector<Column>& gens, int min_multiplier_degree = 0);
  /// Adds a single vector; returns false if it was already in the span.
  bool add_vector(const Column& v);
  bool contains(const Column& v) const;
  /// dim F0 / (span + m^k F0) for k <= level.
  int colength_at(int k) const;
  std::size_t span_dimension() const;

  /// For images w_i (truncated to this level) returns a basis of the
  /// coefficient vectors c with sum c_i w_i in the current span.
  std::vector<std::vector<FieldElement>> kernel_of(const std::vector<Column>& images) const;

private:
  template <class Ops>
  std::vector<typename Ops::value_type> vectorize(const Ops& ops, const Column& v, std::size_t extra) const;

  Tower field_;
  int rank_;
  int level_;
  std::variant<Echelon<PrimeOps>, Echelon<RationalOps>, Echelon<TowerOps>> ech_;
};

// --- constructors -----------------------------------------------------------

TFModule ideal(const LocalRing& ring, const std::vector<BiPoly>& gens);
TFModule ideal(const LocalRing& ring, const std::vector<std::string>& gens);
/// m^n as an ideal (n = 0 gives the unit ideal).
TFModule maximal_power(const LocalRing& ring, int n);
TFModule free_module(const LocalRing& ring, int rank);
TFModule direct_sum(const TFModule& a, const TFModule& b);
TFModule ideal_product(const TFModule& a, const TFModule& b);
/// Module with generators `a` followed by `b` (same ambient).
TFModule module_sum(const TFModule& a, const TFModule& b);
/// m^n F0 for the given ambient rank.
TFModule maximal_power_module(const LocalRing& ring, int rank, int n);

// --- lengths and membership --------------------------------------------------

bool has_finite_colength(const TFModule& m, const Config& cfg = default_config());
/// lambda(F0/M); kInfinity if the quotient has infinite length.
int colength(const TFModule& m, const Config& cfg = default_config());
/// First level k with m^k F0 inside M (requires finite colength).
int stable_level(const TFModule& m, const Config& cfg = default_config());
bool membership(const Column& f, const TFModule& m, const Config& cfg = default_config());
/// N inside M, decided by generator membership.
bool contains(const TFModule& m, const TFModule& n, const Config& cfg = default_config());
bool modules_equal(const TFModule& a, const TFModule& b, const Config& cfg = default_config());

// --- minors and derived invariants ------------------------------------------

/// All r x r minors indexed by increasing column subsets, lexicographic.
std::vector<std::pair<std::vector<std::size_t>, BiPoly>> maximal_minors(const TFModule& m,
                                                                        const Config& cfg = default_config());
std::size_t binomial(std::size_t n, std::size_t k);
BiPoly determinant(const std::vector<Column>& square);
/// Determinant truncated below total degree k.
BiPoly determinant_truncated(const std::vector<Column>& square, int k);
/// Adjugate (as columns) truncated below total degree k.
std::vector<Column> adjugate_truncated(const std::vector<Column>& square, int k);
std::vector<Column> adjugate(const std::vector<Column>& square);

TFModule minors_ideal(const TFModule& m, const Config& cfg = default_config());
/// The m-adic order of the minors ideal; throws ZeroModule if all minors vanish.
int order(const TFModule& m, const Config& cfg = default_config());

/// Minimal valuation of the r x r minors restricted to the line (alpha*s,
/// beta*s), with the column set of one minimizing minor.
struct LineValuation {
  int valuation = kInfinity;
  std::vector<std::size_t> columns;
};
LineValuation min_minor_valuation_along(const TFModule& m, const FieldElement& alpha, const FieldElement& beta);

// --- module operations -------------------------------------------------------

TFModule saturate(const TFModule& m, const Config& cfg = default_config());
/// A module isomorphic to M sitting with finite colength in F0 = M**: M itself
/// when the colength is finite, F0 when M is free, M/gcd for rank one.
TFModule double_dual_presentation(const TFModule& m, const Config& cfg = default_config());
/// {f in F0 : d f in N + m^K F0} (constructed with m^K F0 included).
TFModule colon_truncated(const TFModule& n, const BiPoly& d, int level, const Config& cfg = default_config());
TFModule colon_by_element(const TFModule& n, const BiPoly& d, const Config& cfg = default_config());
TFModule minimal_generators(const TFModule& m, const Config& cfg = default_config());
int nu(const TFModule& m, const Config& cfg = default_config());
bool is_free(const TFModule& m, const Config& cfg = default_config());
bool is_contracted(const TFModule& m, const Config& cfg = default_config());
bool is_mprimary(const TFModule& ideal, const Config& cfg = default_config());
bool is_unit(const BiPoly& f);
/// Generators of the n-th symmetric power inside Sym_n(F0).
TFModule sym_power(const TFModule& m, int n, const Config& cfg = default_config());
/// Monomials of degree n in `rank` symbols, degree-lexicographic.
std::vector<std::vector<int>> sym_basis(int rank, int n);

/// Applies the ring substitution to every entry.
std::vector<Column> substitute_columns(const std::vector<Column>& cols, const BiPoly& x, const BiPoly& y);
/// M applied to a vector of field elements: sum of c_i * (column i).
Column combine_columns(const std::vector<Column>& cols, const std::vector<FieldElement>& coeffs, int rank);
Column zero_column(const LocalRing& ring, int rank);

}  // namespace icm
