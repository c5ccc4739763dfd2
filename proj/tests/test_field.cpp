#include "doctest.h"

#include <random>

#include "icm/error.hpp"
#include "icm/unipoly.hpp"

using namespace icm;

namespace {

UniPoly product(const std::vector<FactorPower>& fs, const UniPoly& like) {
  UniPoly acc = UniPoly::constant(like.lead(), like.var());
  for (const auto& f : fs)
    for (int i = 0; i < f.multiplicity; ++i) acc = acc * f.factor;
  return acc;
}

// Roots by trying every field element.
std::vector<FieldElement> scan_roots(const UniPoly& p) {
  std::vector<FieldElement> out;
  for (const auto& e : enumerate_finite_field(p.tower(), 100000))
    if (p.eval(e).is_zero()) out.push_back(e);
  return out;
}

}  // namespace

TEST_CASE("prime field element arithmetic") {
  Tower f5 = FieldTower::prime_field(5);
  FieldElement a = FieldElement::from_int(f5, 3);
  CHECK((a * a).to_string() == "-1");
  CHECK((a.inverse() * a).is_one());
  CHECK(FieldElement::from_rational(f5, Rational(1, 2)).to_string() == "-2");
  CHECK_THROWS_AS(FieldTower::prime_field(21), Error);
}

TEST_CASE("field axioms on random triples in an extension tower") {
  Tower base = FieldTower::prime_field(101);
  Tower k = extend_tower(base, UniPoly::from_ints(base, {2, 0, 1}), "a");
  FieldElement a = FieldElement::generator(k, 1);
  UniPoly cubic;
  for (long long c = 0;; ++c) {
    cubic = UniPoly(k, {a + FieldElement::from_int(k, c), FieldElement::from_int(k, 0), FieldElement::from_int(k, 0),
                        FieldElement::from_int(k, 1)});
    if (is_irreducible(cubic)) break;
  }
  Tower k2 = extend_tower(k, cubic, "b");
  CHECK(k2->degree() == 6);
  std::mt19937_64 rng(7);
  auto rnd = [&] {
    std::vector<std::uint64_t> c(k2->degree());
    for (auto& v : c) v = rng() % 101;
    return FieldElement::from_flat_mod(k2, c);
  };
  for (int i = 0; i < 30; ++i) {
    FieldElement x = rnd(), y = rnd(), z = rnd();
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    if (!x.is_zero()) CHECK((x * x.inverse()).is_one());
  }
  FieldElement b = FieldElement::generator(k2, 2);
  CHECK(cubic.embed(k2).eval(b).is_zero());
}

TEST_CASE("rational towers") {
  Tower q = FieldTower::rationals();
  Tower qi = extend_tower(q, UniPoly::from_ints(q, {1, 0, 1}), "a");
  FieldElement a = FieldElement::generator(qi, 1);
  CHECK((a * a).to_string() == "-1");
  FieldElement z = a + FieldElement::from_rational(qi, Rational(1, 3));
  CHECK(z.to_string() == "a+1/3");
  CHECK(z.needs_parens());
  CHECK((z * z.inverse()).is_one());
  CHECK(qi->describe() == "QQ[a: T^2+1]");
}

TEST_CASE("factor t^2+1 over Q is irreducible") {
  Tower q = FieldTower::rationals();
  auto f = factor_univariate(UniPoly::from_ints(q, {1, 0, 1}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].factor.to_string() == "t^2+1");
  CHECK(f[0].multiplicity == 1);
}

TEST_CASE("factor t^2 over GF(5)") {
  Tower f5 = FieldTower::prime_field(5);
  auto f = factor_univariate(UniPoly::from_ints(f5, {0, 0, 1}));
  REQUIRE(f.size() == 1);
  CHECK(f[0].factor.to_string() == "t");
  CHECK(f[0].multiplicity == 2);
}

TEST_CASE("factor t^2+1 over GF(5) agrees with a root scan") {
  Tower f5 = FieldTower::prime_field(5);
  UniPoly p = UniPoly::from_ints(f5, {1, 0, 1});
  auto roots = scan_roots(p);
  REQUIRE(roots.size() == 2);
  auto f = factor_univariate(p);
  REQUIRE(f.size() == 2);
  for (const auto& fp : f) {
    CHECK(fp.factor.degree() == 1);
    bool hit = false;
    for (const auto& r : roots) hit = hit || fp.factor.eval(r).is_zero();
    CHECK(hit);
  }
  CHECK(f[0].factor.to_string() == "t+2");
  CHECK(f[1].factor.to_string() == "t-2");
}

TEST_CASE("extend_tower checks irreducibility") {
  Tower f5 = FieldTower::prime_field(5);
  UniPoly p = UniPoly::from_ints(f5, {2, 0, 1});
  CHECK(scan_roots(p).empty());
  CHECK(extend_tower(f5, p, "a")->degree() == 2);
  CHECK_THROWS_AS(extend_tower(f5, UniPoly::from_ints(f5, {1, 0, 1}), "a"), Error);
  Tower lin = extend_tower(f5, UniPoly::from_ints(f5, {-3, 1}), "c");
  CHECK(lin->degree() == 1);
  CHECK(FieldElement::generator(lin, 1) == FieldElement::from_int(lin, 3));
}

TEST_CASE("factorizations multiply back") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2ull, 3ull, 7ull, 32003ull}) {
    Tower k = FieldTower::prime_field(p);
    for (int trial = 0; trial < 15; ++trial) {
      UniPoly acc = UniPoly::constant(FieldElement::from_int(k, 1 + static_cast<long long>(rng() % (p - 1 ? p - 1 : 1))));
      int pieces = 1 + static_cast<int>(rng() % 4);
      for (int i = 0; i < pieces; ++i) {
        std::vector<long long> c(2 + rng() % 4);
        for (auto& v : c) v = static_cast<long long>(rng() % p);
        c.back() = 1;
        UniPoly piece = UniPoly::from_ints(k, c);
        acc = acc * piece;
        if (rng() % 3 == 0) acc = acc * piece;
      }
      auto f = factor_univariate(acc);
      CHECK(product(f, acc) == acc);
      for (const auto& fp : f) {
        CHECK(fp.factor.is_monic());
        if (p <= 7 && fp.factor.degree() >= 2) CHECK(scan_roots(fp.factor).empty());
      }
    }
  }
  Tower q = FieldTower::rationals();
  for (int trial = 0; trial < 15; ++trial) {
    UniPoly acc = UniPoly::constant(FieldElement::from_rational(q, Rational(3, 2)));
    int pieces = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < pieces; ++i) {
      std::vector<long long> c(2 + rng() % 2);
      for (auto& v : c) v = static_cast<long long>(rng() % 11) - 5;
      c.back() = 1 + static_cast<long long>(rng() % 3);
      acc = acc * UniPoly::from_ints(q, c);
    }
    auto f = factor_univariate(acc);
    CHECK(product(f, acc) == acc);
  }
}

TEST_CASE("factorization over an extension of Q") {
  Tower q = FieldTower::rationals();
  Tower qi = extend_tower(q, UniPoly::from_ints(q, {1, 0, 1}), "a");
  auto f = factor_univariate(UniPoly::from_ints(qi, {1, 0, 1}));
  REQUIRE(f.size() == 2);
  CHECK(f[0].factor.degree() == 1);
  CHECK(f[1].factor.degree() == 1);
  auto g = factor_univariate(UniPoly::from_ints(qi, {-2, 0, 1}));
  CHECK(g.size() == 1);
  UniPoly cube = UniPoly::from_ints(qi, {1, 0, 0, 1});
  auto h = factor_univariate(cube);
  REQUIRE(h.size() == 2);
  CHECK(h[0].factor.to_string() == "t+1");
  CHECK(product(h, cube) == cube);
  CHECK_THROWS_AS(factor_univariate(UniPoly::from_ints(qi, {1, 0, 0, 0, 1})), Error);
}

TEST_CASE("extension of GF(p) splits its own minimal polynomial") {
  Tower f7 = FieldTower::prime_field(7);
  Tower k = extend_tower(f7, UniPoly::from_ints(f7, {1, 0, 1}), "a");
  auto f = factor_univariate(UniPoly::from_ints(k, {1, 0, 1}));
  REQUIRE(f.size() == 2);
  auto g = factor_univariate(UniPoly::from_ints(k, {3, 0, 0, 1}));
  CHECK(product(g, UniPoly::from_ints(k, {3, 0, 0, 1})) == UniPoly::from_ints(k, {3, 0, 0, 1}));
}
