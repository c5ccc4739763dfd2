#include "doctest.h"

#include <random>

#include "icm/error.hpp"
#include "icm/multiplicity.hpp"
#include "icm/valuation.hpp"
#include "oracle.hpp"

using namespace icm;

namespace {

constexpr std::uint64_t kP = 32003;

LocalRing gf() { return LocalRing::root(FieldTower::prime_field(kP)); }
TFModule id(const LocalRing& R, std::vector<std::string> g) { return ideal(R, g); }
TFModule mm(const LocalRing& R) { return direct_sum(maximal_power(R, 1), maximal_power(R, 1)); }

// lambda(F/N) for r + 1 random combinations, computed by the dense oracle.
int oracle_reduction_colength(const TFModule& m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const TFModule g = minimal_generators(m);
  const int r = m.rank();
  std::vector<oracle::Col> cols;
  for (int k = 0; k <= r; ++k) {
    std::vector<FieldElement> row;
    for (std::size_t j = 0; j < g.column_count(); ++j)
      row.push_back(FieldElement::from_int(m.ring().field, static_cast<long long>(1 + rng() % 30000)));
    cols.push_back(combine_columns(g.columns(), row, r));
  }
  return oracle::colength(cols, r, kP);
}

}  // namespace

TEST_CASE("generic reductions") {
  LocalRing R = gf();
  CHECK(generic_reduction(maximal_power(R, 1), 1).colength == 1);
  CHECK(oracle_reduction_colength(mm(R), 3) == 3);
  ReductionSample s = generic_reduction(mm(R), 1);
  CHECK(s.reduction.column_count() == 3);
  CHECK(s.colength == 3);
  CHECK(s.colength == oracle::colength(s.reduction.columns(), 2, kP));
  CHECK(oracle_reduction_colength(maximal_power(R, 2), 4) == 4);
  CHECK(generic_reduction(maximal_power(R, 2), 1).colength == 4);
  CHECK(contains(mm(R), s.reduction));
}

TEST_CASE("Buchsbaum-Rim multiplicity by reductions") {
  LocalRing R = gf();
  CHECK(br_multiplicity_reduction(maximal_power(R, 1)) == 1);
  CHECK(br_multiplicity_reduction(mm(R)) == 3);
  CHECK(br_multiplicity_reduction(free_module(R, 2)) == 0);
  MultiplicityEstimate est = br_multiplicity_samples(mm(R), 7, 5);
  CHECK(est.stable);
  CHECK(est.samples.size() == 5);
}

TEST_CASE("Buchsbaum-Rim multiplicity by growth") {
  LocalRing R = gf();
  GrowthTable g1 = br_multiplicity_growth(maximal_power(R, 1), 4);
  CHECK(g1.multiplicity == 1);
  CHECK(g1.leading == Rational(1, 2));
  GrowthTable g2 = br_multiplicity_growth(maximal_power(R, 2), 4);
  CHECK(g2.multiplicity == 4);
  CHECK(g2.coefficients[1] == Rational(1));
  GrowthTable g3 = br_multiplicity_growth(mm(R), 5);
  for (int n = 1; n <= 4; ++n)
    CHECK(g3.colengths[static_cast<std::size_t>(n - 1)] ==
          oracle::colength(sym_power(mm(R), n).columns(), n + 1, kP));
  CHECK(g3.multiplicity == 3);
  CHECK_THROWS_AS(br_multiplicity_growth(mm(R), 4), Error);
}

TEST_CASE("Samuel multiplicity") {
  LocalRing R = gf();
  CHECK(samuel_multiplicity(maximal_power(R, 1)) == 1);
  CHECK(samuel_multiplicity(maximal_power(R, 3)) == 9);
  TFModule I = id(R, {"x^3", "x^2*y", "x^2+y^2"});
  CHECK(oracle_reduction_colength(I, 11) == 6);
  CHECK(samuel_multiplicity(I) == 6);
  CHECK_THROWS_AS(samuel_multiplicity(id(R, {"x^2", "x*y"})), Error);
}

TEST_CASE("integral dependence of single elements") {
  LocalRing R = gf();
  CHECK(is_integral_element({R.parse("x*y")}, id(R, {"x^2", "y^2"})));
  CHECK_FALSE(is_integral_element({R.parse("x")}, id(R, {"x^2", "y^2"})));
  CHECK(is_integral_element({R.parse("x^2+y^2")}, id(R, {"x^2", "y^2"})));
  CHECK_FALSE(is_integral_element({R.parse("1"), R.zero()}, mm(R)));
  CHECK(is_integral_element({R.parse("x*y"), R.parse("x^2")}, maximal_power_module(R, 2, 2)));
}

TEST_CASE("monomial closure") {
  LocalRing R = gf();
  TFModule c = monomial_ideal_closure(id(R, {"x^2", "y^2"}));
  REQUIRE(c.column_count() == 3);
  CHECK(c.columns()[0][0].to_string() == "x^2");
  CHECK(c.columns()[1][0].to_string() == "x*y");
  CHECK(c.columns()[2][0].to_string() == "y^2");
  CHECK(monomial_ideal_closure(id(R, {"x^2", "x*y", "y^3"})).column_count() == 3);
  CHECK(modules_equal(monomial_ideal_closure(maximal_power(R, 4)), maximal_power(R, 4)));
  TFModule big = monomial_ideal_closure(id(R, {"x^7", "y^3"}));
  CHECK(modules_equal(monomial_ideal_closure(big), big));
  CHECK(nu(big) == 4);
  CHECK_THROWS_AS(monomial_ideal_closure(id(R, {"x+y"})), Error);
}

TEST_CASE("length formulas on V-contracted modules") {
  LocalRing R = gf();
  FormulaCheck a = verify_reduction_length(mm(R));
  CHECK(a.holds);
  CHECK(a.lhs == 1);
  CHECK(verify_reduction_length(maximal_power(R, 1)).lhs == 0);
  TFModule m2m = direct_sum(maximal_power(R, 2), maximal_power(R, 1));
  FormulaCheck b = verify_reduction_length(m2m);
  CHECK(b.holds);
  CHECK(b.rhs == 3);
  CHECK(verify_local_formula(mm(R)).lhs == 3);
  CHECK(verify_local_formula(mm(R)).holds);
  CHECK(verify_local_formula(maximal_power(R, 2)).rhs == 4);
  CHECK(verify_local_formula(free_module(R, 2)).holds);
  FormulaCheck c = verify_mult_formula(m2m);
  CHECK(c.holds);
  CHECK(oracle::colength(m2m.columns(), 2, kP) == 4);
  CHECK(oracle_reduction_colength(m2m, 5) == 7);
  CHECK(c.lhs == 7);
  CHECK(verify_mult_formula(mm(R)).rhs == 3);
  CHECK(verify_mult_formula(maximal_power(R, 2)).holds);
  CHECK_FALSE(verify_reduction_length(id(R, {"x^3", "x^2*y", "x^2+y^2"})).applicable);
}

TEST_CASE("multiplicity is the weighted sum over the decomposition tree") {
  LocalRing R = gf();
  FormulaCheck t = verify_tree_multiplicity(id(R, {"x^2", "x*y", "y^3"}));
  CHECK(t.holds);
  CHECK(t.lhs == 5);
  CHECK(verify_tree_multiplicity(mm(R)).holds);
}
