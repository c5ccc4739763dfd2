#include "doctest.h"

#include <random>

#include "icm/error.hpp"
#include "icm/module.hpp"
#include "oracle.hpp"

using namespace icm;

namespace {

constexpr std::uint64_t kP = 32003;

LocalRing gf() { return LocalRing::root(FieldTower::prime_field(kP)); }
LocalRing qq() { return LocalRing::root(FieldTower::rationals()); }

TFModule mod(const LocalRing& R, int r, const std::vector<std::vector<std::string>>& cols) {
  std::vector<Column> c;
  for (const auto& col : cols) {
    Column v;
    for (const auto& s : col) v.push_back(R.parse(s));
    c.push_back(v);
  }
  return TFModule(R, r, c);
}

TFModule random_module(const LocalRing& R, std::mt19937_64& rng, int r, int ncols, int deg) {
  const FieldElement one = FieldElement::from_int(R.field, 1);
  for (;;) {
    std::vector<Column> cols;
    for (int j = 0; j < ncols; ++j) {
      Column c;
      for (int i = 0; i < r; ++i) {
        BiPoly f = R.zero();
        for (int a = 0; a <= deg; ++a)
          for (int b = 0; a + b <= deg; ++b)
            if (a + b >= 1 && rng() % 3 == 0)
              f += BiPoly::monomial(FieldElement::from_int(R.field, static_cast<long long>(rng() % 7) - 3), a, b);
        c.push_back(f);
      }
      cols.push_back(c);
    }
    try {
      TFModule m(R, r, cols);
      if (has_finite_colength(m) && colength(m) <= 12) return m;
    } catch (const Error&) {
    }
    (void)one;
  }
}

}  // namespace

TEST_CASE("colength of small ideals and modules") {
  LocalRing R = gf();
  CHECK(colength(maximal_power(R, 2)) == 3);
  CHECK(colength(maximal_power(R, 4)) == 10);
  TFModule I = ideal(R, std::vector<std::string>{"x^3", "x^2*y", "x^2+y^2"});
  CHECK(colength(I) == oracle::colength(I.columns(), 1, kP));
  CHECK(colength(I) == 5);
  TFModule mm = direct_sum(maximal_power(R, 1), maximal_power(R, 1));
  CHECK(colength(mm) == 2);
  CHECK(colength(free_module(R, 3)) == 0);
  CHECK(colength(ideal(R, std::vector<std::string>{"x*y"})) == kInfinity);
  CHECK_FALSE(has_finite_colength(ideal(R, std::vector<std::string>{"x^2", "x*y"})));
}

TEST_CASE("colength agrees with the dense oracle on random modules") {
  LocalRing R = gf();
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    const int r = 1 + trial % 3;
    TFModule m = random_module(R, rng, r, r + 2, 3);
    CHECK(colength(m) == oracle::colength(m.columns(), r, kP));
    CHECK(nu(m) == oracle::minimal_count(m.columns(), r, stable_level(m) + 2, kP));
  }
}

TEST_CASE("membership in an ideal") {
  LocalRing R = gf();
  TFModule I = ideal(R, std::vector<std::string>{"x^3", "x^2*y", "x^2+y^2"});
  for (const char* f : {"x*y", "y^3", "x*y^2", "y^2", "x^2", "x^2*y+y^4", "y^4"}) {
    Column v{R.parse(f)};
    CHECK(membership(v, I) == oracle::member(v, I.columns(), 1, 12, kP));
  }
  CHECK_FALSE(membership({R.parse("x*y")}, I));
  CHECK(membership({R.parse("y^4")}, I));
  CHECK(contains(maximal_power(R, 1), I));
  CHECK(contains(I, maximal_power(R, 4)));
  CHECK_FALSE(contains(I, maximal_power(R, 2)));
  CHECK(modules_equal(ideal(R, std::vector<std::string>{"x", "y"}), ideal(R, std::vector<std::string>{"x+y", "x-y"})));
}

TEST_CASE("maximal minors and order") {
  LocalRing R = qq();
  TFModule m = mod(R, 2, {{"x", "0"}, {"y", "x"}, {"0", "y"}});
  auto minors = maximal_minors(m);
  REQUIRE(minors.size() == 3);
  CHECK(minors[0].second.to_string() == "x^2");
  CHECK(minors[1].second.to_string() == "x*y");
  CHECK(minors[2].second.to_string() == "y^2");
  CHECK(order(m) == 2);
  CHECK(determinant({{R.parse("x"), R.parse("y")}, {R.parse("1"), R.parse("x")}}).to_string() == "x^2-y");
  std::vector<Column> sq{{R.parse("x"), R.parse("y")}, {R.parse("1"), R.parse("x")}};
  auto adj = adjugate(sq);
  // adj(C) * C = det(C) * identity
  BiPoly d = determinant(sq);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      BiPoly s = R.zero();
      for (int k = 0; k < 2; ++k) s += adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] * sq[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      CHECK(s == (i == j ? d : R.zero()));
    }
}

TEST_CASE("order by line specialization matches the minors route") {
  LocalRing R = gf();
  std::mt19937_64 rng(5);
  Config tight = default_config();
  tight.witness_subset_cap = 1;
  for (int trial = 0; trial < 10; ++trial) {
    const int r = 1 + trial % 3;
    TFModule m = random_module(R, rng, r, r + 2, 3);
    TFModule copy(R, r, m.columns());
    CHECK(order(m) == order(copy, tight));
  }
}

TEST_CASE("minimal generators") {
  LocalRing R = gf();
  CHECK(nu(ideal(R, std::vector<std::string>{"x", "y", "x+y"})) == 2);
  TFModule mm = mod(R, 2, {{"x", "0"}, {"y", "0"}, {"0", "x"}, {"0", "y"}, {"x+y", "x"}});
  CHECK(nu(mm) == 4);
  TFModule I = ideal(R, std::vector<std::string>{"x^3", "x^2*y", "x^2+y^2"});
  CHECK(nu(I) == oracle::minimal_count(I.columns(), 1, 10, kP));
  CHECK(nu(I) == 3);
  CHECK(modules_equal(minimal_generators(I), I));
  // rank one, infinite colength
  TFModule J = ideal(R, std::vector<std::string>{"x^2*y", "x*y^2", "x*y*(x+y)"});
  CHECK(nu(J) == 2);
  // free, infinite colength entries
  TFModule F = mod(R, 1, {{"1+x"}, {"y"}});
  CHECK(nu(F) == 1);
}

TEST_CASE("freeness, primary ideals and saturation") {
  LocalRing R = gf();
  CHECK(is_free(free_module(R, 2)));
  CHECK_FALSE(is_free(maximal_power_module(R, 2, 1)));
  CHECK(is_free(ideal(R, std::vector<std::string>{"x*y"})));
  CHECK_FALSE(is_free(ideal(R, std::vector<std::string>{"x^2", "x*y"})));
  CHECK(is_mprimary(maximal_power(R, 3)));
  CHECK_FALSE(is_mprimary(ideal(R, std::vector<std::string>{"1+x"})));
  CHECK_FALSE(is_mprimary(ideal(R, std::vector<std::string>{"x"})));
  CHECK_THROWS_AS(is_mprimary(ideal(R, std::vector<std::string>{"0"})), Error);
  TFModule s = saturate(ideal(R, std::vector<std::string>{"x^2", "x*y"}));
  CHECK(s.columns()[0][0].to_string() == "x");
  CHECK(colength(saturate(maximal_power_module(R, 2, 1))) == 0);
  CHECK(is_contracted(maximal_power(R, 3)));
  CHECK_FALSE(is_contracted(ideal(R, std::vector<std::string>{"x^2", "y^2"})));
}

TEST_CASE("colon by an element") {
  LocalRing R = gf();
  TFModule N = maximal_power(R, 3);
  TFModule Q = colon_by_element(N, R.parse("x"));
  CHECK(modules_equal(Q, maximal_power(R, 2)));
  TFModule I = ideal(R, std::vector<std::string>{"x^3", "x^2*y", "x^2+y^2"});
  TFModule Q2 = colon_by_element(I, R.parse("y"));
  for (const char* f : {"x", "y", "x^2", "x*y", "y^2", "1"}) {
    Column v{R.parse(f)};
    Column yv{R.parse(f) * R.parse("y")};
    CHECK(membership(v, Q2) == membership(yv, I));
  }
}

TEST_CASE("symmetric powers") {
  LocalRing R = gf();
  auto basis = sym_basis(2, 2);
  REQUIRE(basis.size() == 3);
  CHECK(basis[0] == std::vector<int>{2, 0});
  CHECK(basis[2] == std::vector<int>{0, 2});
  TFModule mm = maximal_power_module(R, 2, 1);
  TFModule s2 = sym_power(mm, 2);
  CHECK(s2.rank() == 3);
  CHECK(colength(s2) == oracle::colength(s2.columns(), 3, kP));
  CHECK(colength(s2) == 9);
  CHECK(order(s2) == order(mm) * 3);
  TFModule I = ideal(R, std::vector<std::string>{"x^2", "y^3"});
  CHECK(colength(sym_power(I, 2)) == oracle::colength(sym_power(I, 2).columns(), 1, kP));
  CHECK(colength(sym_power(I, 2)) == 18);
}

TEST_CASE("module construction errors") {
  LocalRing R = gf();
  CHECK_THROWS_AS(mod(R, 2, {{"x", "y"}, {"x^2", "x*y"}}), Error);
  CHECK_THROWS_AS(mod(R, 2, {{"x"}}), Error);
  try {
    mod(R, 2, {{"x", "y"}, {"2*x", "2*y"}});
    FAIL("expected rank deficiency");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
}
