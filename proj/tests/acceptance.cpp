// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "icm/fixtures.hpp"
#include "icm/hd.hpp"
#include "icm/multiplicity.hpp"
#include "icm/valuation.hpp"
#include "oracle.hpp"

using namespace icm;

namespace {

constexpr std::uint64_t kP = 32003;
constexpr int kRandom = 25;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  int checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail << "first failure: " << what << "; ";
    }
  }
};

int failures = 0;

void criterion(int id, const char* name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what() << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s %d %s: %s%d checks, %.1fs\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.str().c_str(), o.checks,
              secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

LocalRing gf() { return LocalRing::root(FieldTower::prime_field(kP)); }
LocalRing qq() { return LocalRing::root(FieldTower::rationals()); }

TFModule mpow(const LocalRing& R, int n) { return maximal_power(R, n); }
TFModule sum(const TFModule& a, const TFModule& b) { return direct_sum(a, b); }
TFModule id(const LocalRing& R, std::vector<std::string> g) { return ideal(R, g); }

std::string str(long long v) { return std::to_string(v); }

// Random finite-colength module from a sparse matrix, not closed up.
TFModule random_raw(const LocalRing& R, std::mt19937_64& rng, int r, int ncols, int deg, int max_colength) {
  for (;;) {
    std::vector<Column> cols;
    for (int j = 0; j < ncols; ++j) {
      Column c;
      for (int i = 0; i < r; ++i) {
        BiPoly f = R.zero();
        for (int a = 0; a <= deg; ++a)
          for (int b = 0; a + b <= deg; ++b)
            if (a + b >= 1 && rng() % 3 == 0)
              f += BiPoly::monomial(FieldElement::from_int(R.field, static_cast<long long>(rng() % 9) - 4), a, b);
        c.push_back(f);
      }
      cols.push_back(c);
    }
    try {
      TFModule m(R, r, cols);
      if (has_finite_colength(m) && colength(m) <= max_colength) return m;
    } catch (const Error&) {
    }
  }
}

std::vector<TFModule> random_v_fixtures(const LocalRing& R) {
  std::vector<TFModule> out;
  for (int i = 0; i < kRandom; ++i) out.push_back(random_v_contracted(R, 1000 + static_cast<std::uint64_t>(i), 1 + i % 3, 7, 4));
  return out;
}

}  // namespace

int main() {
  const LocalRing R = gf();
  const TFModule m = mpow(R, 1);
  const TFModule mm = sum(m, m);
  const TFModule m2R = sum(mpow(R, 2), free_module(R, 1));
  const TFModule m2m = sum(mpow(R, 2), m);
  const TFModule m3 = mpow(R, 3);
  const std::vector<TFModule> vfix = random_v_fixtures(R);

  criterion(1, "decomposition total equals colength for modules", [&](Outcome& o) {
    int max_nu = 0, max_deg = 0, max_rank = 0;
    std::vector<TFModule> all{mm, m2R, m2m, m3};
    for (const auto& v : vfix) {
      o.expect(is_contracted_from_V(v), "random fixture is V-contracted");
      max_nu = std::max(max_nu, static_cast<int>(v.column_count()));
      max_deg = std::max(max_deg, v.max_degree());
      max_rank = std::max(max_rank, v.rank());
      all.push_back(v);
    }
    o.expect(max_nu <= 7 && max_deg <= 4 && max_rank <= 3, "fixture bounds");
    const int expected[] = {2, 3, 4, 6};
    for (std::size_t i = 0; i < all.size(); ++i) {
      HDReport h = hd_verify(all[i]);
      o.expect(h.equal, "module " + str(static_cast<long long>(i)) + ": " + str(h.total) + " vs " + str(h.direct));
      if (i < 4) o.expect(h.total == expected[i], "fixed fixture total");
    }
    o.detail << all.size() << " modules (4 fixed, " << kRandom << " random), max rank " << max_rank << ", max nu "
             << max_nu << ", max degree " << max_deg << "; ";
  });

  criterion(2, "decomposition total equals colength for ideals", [&](Outcome& o) {
    const LocalRing Q = qq();
    const TFModule I = id(Q, {"x^3", "x^2*y", "x^2+y^2"});
    std::vector<std::pair<TFModule, int>> fixed{{mpow(R, 2), 3}, {m3, 6}, {id(R, {"x^2", "x*y", "y^3"}), 4}, {I, 5}};
    for (const auto& [j, lambda] : fixed) {
      HDTree t = hd_ideal(j);
      o.expect(t.total == t.direct_colength && t.total == lambda, "fixed ideal total " + str(t.total));
    }
    HDTree ti = hd_ideal(I);
    o.expect(ti.root.local_term == 3, "root term 3");
    o.expect(ti.root.children.size() == 1 && ti.root.children[0].degree_over_root == 2, "one child of degree 2");
    if (ti.root.children.size() == 1) o.expect(ti.root.children[0].local_term == 1, "child term 1");
    o.detail << "(x^3, x^2y, x^2+y^2) over Q: " << ti.root.local_term << " + "
             << (ti.root.children.empty() ? 0 : ti.root.children[0].local_term) << "*2 = " << ti.total << "; ";
    for (int i = 0; i < kRandom; ++i) {
      TFModule j = random_monomial_complete(R, 500 + static_cast<std::uint64_t>(i), 6);
      HDTree t = hd_ideal(j);
      o.expect(t.total == t.direct_colength, "random monomial ideal " + str(i));
      o.expect(t.direct_colength == oracle::colength(j.columns(), 1, kP), "oracle colength of monomial ideal " + str(i));
    }
  });

  criterion(3, "length of M/N for reductions N", [&](Outcome& o) {
    FormulaCheck a = verify_reduction_length(mm, 1, 5), b = verify_reduction_length(m2m, 1, 5);
    o.expect(a.holds && a.per_seed == std::vector<long long>(5, 1), "m+m gives 1 on every seed");
    o.expect(b.holds && b.per_seed == std::vector<long long>(5, 3), "m^2+m gives 3 on every seed");
    for (const auto& v : vfix) {
      FormulaCheck c = verify_reduction_length(v, 1, 5);
      o.expect(c.applicable && c.holds && c.per_seed.size() == 5, "random V-contracted fixture");
    }
    o.detail << "m+m: " << a.lhs << ", m^2+m: " << b.lhs << " on 5 seeds each; ";
  });

  criterion(4, "e(M) = colength + binom(ord, 2)", [&](Outcome& o) {
    FormulaCheck a = verify_local_formula(mm);
    o.expect(a.holds && a.lhs == 3, "m+m: 3 = 2 + 1");
    for (const auto& v : vfix) o.expect(verify_local_formula(v).holds, "random V-contracted fixture");
    for (const auto& v : {m2m, m2R, m3}) o.expect(verify_local_formula(v).holds, "fixed fixture");
    o.detail << "m+m: " << a.lhs << " = 2 + 1; ";
  });

  criterion(5, "e(M) = e(I(M)) - colength(I(M)) + colength(M)", [&](Outcome& o) {
    FormulaCheck a = verify_mult_formula(mm), b = verify_mult_formula(m2m);
    o.expect(a.holds && a.lhs == 3, "m+m: 3 = 4 - 3 + 2");
    const int lambda = oracle::colength(m2m.columns(), 2, kP);
    o.expect(lambda == 4 && colength(m2m) == 4, "oracle colength of m^2+m is 4");
    o.expect(samuel_multiplicity(minors_ideal(m2m)) == 9 && colength(minors_ideal(m2m)) == 6, "I(m^2+m) = m^3");
    o.expect(b.holds && b.lhs == 7, "m^2+m: 7 = 9 - 6 + 4");
    std::size_t certified = 2;
    for (const auto& v : vfix) o.expect(verify_mult_formula(v).holds, "random V-contracted fixture"), ++certified;
    for (const auto& v : {m2R, m3}) o.expect(verify_mult_formula(v).holds, "fixed fixture"), ++certified;
    for (int i = 0; i < 5; ++i) {
      TFModule j = random_monomial_complete(R, 700 + static_cast<std::uint64_t>(i), 5);
      o.expect(verify_mult_formula(j).holds, "monomial-complete ideal");
      ++certified;
    }
    o.detail << certified << " certified fixtures; m+m: " << a.lhs << " = 4 - 3 + 2; m^2+m: " << b.lhs
             << " = 9 - 6 + " << lambda << "; ";
  });

  criterion(6, "reduction and growth multiplicities agree", [&](Outcome& o) {
    for (const auto& [name, mod] : std::vector<std::pair<std::string, TFModule>>{{"m", m}, {"m^2", mpow(R, 2)}, {"m+m", mm}, {"m^2+R", m2R}}) {
      const int a = br_multiplicity_reduction(mod);
      const long long b = br_multiplicity_growth(mod, 5).multiplicity;
      o.expect(a == b, name);
      o.detail << name << " " << a << "/" << b << " ";
    }
    o.detail << "(n_max 5); ";
  });

  criterion(7, "order valuation properties", [&](Outcome& o) {
    std::mt19937_64 rng(31);
    for (int i = 0; i < kRandom; ++i) {
      const int r = 1 + i % 2;
      TFModule mod = random_raw(R, rng, r, r + 1, 2, 6);
      TFModule p = v_contraction(mod);
      const int n = order(mod);
      o.expect(v_length(mod) == n, "v_length = ord");
      o.expect(modules_equal(minors_ideal(p), mpow(R, n)), "minors of the V-contraction");
      for (int s = 2; s <= 3; ++s)
        o.expect(modules_equal(sym_power(p, s), v_contraction(sym_power(mod, s))), "symmetric power " + str(s));
    }
    o.detail << kRandom << " random modules of rank <= 2; ";
  });

  criterion(8, "derived values reproduced by the dense oracle", [&](Outcome& o) {
    auto both = [&](const std::string& what, long long engine, long long oracle_value, long long expected) {
      o.expect(engine == oracle_value && oracle_value == expected,
               what + ": engine " + str(engine) + ", oracle " + str(oracle_value));
    };
    const TFModule I = id(R, {"x^3", "x^2*y", "x^2+y^2"});
    const TFModule J = id(R, {"x^2", "x*y", "y^3"});
    const TFModule open = id(R, {"x^2", "y^2"});
    both("colength m+m", colength(mm), oracle::colength(mm.columns(), 2, kP), 2);
    both("nu m+m", minimal_generators(mm).column_count(), oracle::minimal_count(mm.columns(), 2, 6, kP), 4);
    both("colength I", colength(I), oracle::colength(I.columns(), 1, kP), 5);
    both("colength (x^2, xy, y^3)", colength(J), oracle::colength(J.columns(), 1, kP), 4);
    both("colength (x^2, y^2)", colength(open), oracle::colength(open.columns(), 1, kP), 4);
    both("colength m^2+m", colength(m2m), oracle::colength(m2m.columns(), 2, kP), 4);
    both("colength m^3", colength(m3), oracle::colength(m3.columns(), 1, kP), 6);
    both("colength I(m+m)", colength(minors_ideal(mm)), oracle::colength(minors_ideal(mm).columns(), 1, kP), 3);
    both("colength S_2(m+m)", colength(sym_power(mm, 2)), oracle::colength(sym_power(mm, 2).columns(), 3, kP), 9);
    const long long growth[] = {2, 9, 24};
    for (int n = 1; n <= 3; ++n) {
      TFModule s = sym_power(mm, n);
      both("growth m+m n=" + str(n), br_multiplicity_growth(mm, 5).colengths[static_cast<std::size_t>(n - 1)],
           oracle::colength(s.columns(), s.rank(), kP), growth[n - 1]);
    }
    for (const auto& [name, mod, e] : std::vector<std::tuple<std::string, TFModule, int>>{{"m+m", mm, 3}, {"m^2+m", m2m, 7}, {"m^2", mpow(R, 2), 4}}) {
      ReductionSample s = generic_reduction(mod, 1);
      both("e(" + name + ") via the reduction", s.colength, oracle::colength(s.reduction.columns(), mod.rank(), kP), e);
    }
    both("e(I) via a reduction", samuel_multiplicity(I), oracle::colength(generic_reduction(I, 1).reduction.columns(), 1, kP), 6);
    o.detail << "engine and oracle agree on every tabulated value; ";
  });

  return failures == 0 ? 0 : 1;
}
