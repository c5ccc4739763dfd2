#include "icm/multiplicity.hpp"

#include <algorithm>
#include <random>

#include "icm/hd.hpp"
#include "icm/valuation.hpp"

namespace icm {

namespace {

long long choose2(long long n) { return n * (n - 1) / 2; }

std::uint64_t draw_seed(std::uint64_t seed, std::size_t draw) {
  return seed * 0x9e3779b97f4a7c15ULL + static_cast<std::uint64_t>(draw) * 0xbf58476d1ce4e5b9ULL + 1;
}

std::uint64_t scalar_bound(const Tower& t, const Config& cfg) {
  if (t->kind() == BaseKind::Prime) return std::min<std::uint64_t>(t->modulus() - 1, cfg.scalar_range);
  return cfg.scalar_range;
}

TFModule require_finite(const TFModule& m, const Config& cfg) {
  if (!has_finite_colength(m, cfg))
    throw Error(ErrorCode::NotMPrimary, "multiplicity needs a module of finite colength");
  return m;
}

}  // namespace

ReductionSample generic_reduction(const TFModule& m, std::uint64_t seed, const Config& cfg) {
  require_finite(m, cfg);
  ReductionSample s;
  s.seed = seed;
  if (colength(m, cfg) == 0) {
    s.reduction = m;
    return s;
  }
  const int r = m.rank();
  const TFModule mg = minimal_generators(m, cfg);
  const Tower& t = m.ring().field;
  const std::uint64_t bound = scalar_bound(t, cfg);
  for (std::size_t draw = 0; draw < cfg.resample_limit; ++draw) {
    std::mt19937_64 rng(draw_seed(seed, draw));
    std::vector<std::vector<FieldElement>> scalars(static_cast<std::size_t>(r) + 1);
    std::vector<Column> cols;
    for (auto& row : scalars) {
      for (std::size_t j = 0; j < mg.column_count(); ++j)
        row.push_back(FieldElement::from_int(t, static_cast<long long>(1 + rng() % bound)));
      cols.push_back(combine_columns(mg.columns(), row, r));
    }
    try {
      TFModule n(m.ring(), r, std::move(cols));
      if (!has_finite_colength(n, cfg)) continue;
      s.scalars = std::move(scalars);
      s.colength = colength(n, cfg);
      s.reduction = std::move(n);
      s.draws = static_cast<int>(draw) + 1;
      return s;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficient) throw;
    }
  }
  throw Error(ErrorCode::ResampleLimit, "no generic reduction of finite colength after " +
                                            std::to_string(cfg.resample_limit) + " draws");
}

MultiplicityEstimate br_multiplicity_samples(const TFModule& m, std::uint64_t seed, std::size_t samples,
                                             const Config& cfg) {
  require_finite(m, cfg);
  MultiplicityEstimate est;
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "at least one sample is needed");
  for (std::size_t k = 0; k < samples; ++k) {
    est.seeds.push_back(seed + k);
    est.samples.push_back(colength(m, cfg) == 0 ? 0 : generic_reduction(m, seed + k, cfg).colength);
  }
  est.value = *std::min_element(est.samples.begin(), est.samples.end());
  est.stable = std::all_of(est.samples.begin(), est.samples.end(), [&](int v) { return v == est.value; });
  return est;
}

int br_multiplicity_reduction(const TFModule& m, std::uint64_t seed, const Config& cfg) {
  return br_multiplicity_samples(m, seed, cfg.reduction_samples, cfg).value;
}

GrowthTable br_multiplicity_growth(const TFModule& m, int n_max, const Config& cfg) {
  require_finite(m, cfg);
  const int r = m.rank();
  if (n_max < r + 3) throw Error(ErrorCode::InvalidArgument, "growth fit needs n_max >= rank + 3");
  GrowthTable g;
  for (int n = 1; n <= n_max; ++n) g.colengths.push_back(colength(sym_power(m, n, cfg), cfg));
  const int n0 = n_max - r - 2;  // first point of the tail
  std::vector<Rational> diff;
  for (int n = n0; n <= n_max; ++n) diff.push_back(Rational(static_cast<long>(g.colengths[static_cast<std::size_t>(n - 1)])));
  // Newton coefficients: leading entries of the difference table
  std::vector<Rational> newton;
  for (int k = 0; k <= r + 2; ++k) {
    newton.push_back(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  if (sgn(newton[static_cast<std::size_t>(r + 2)]) != 0)
    throw Error(ErrorCode::FitUnstable, "difference of order rank + 2 does not vanish on the tail");
  // p(n) = sum_k newton[k] * binom(n - n0, k)
  std::vector<Rational> coeffs(static_cast<std::size_t>(r) + 2, Rational(0));
  std::vector<Rational> basis{Rational(1)};  // binom(n - n0, k) in powers of n
  for (int k = 0; k <= r + 1; ++k) {
    for (std::size_t i = 0; i < basis.size(); ++i) coeffs[i] += newton[static_cast<std::size_t>(k)] * basis[i];
    std::vector<Rational> next(basis.size() + 1, Rational(0));
    const Rational shift(static_cast<long>(n0 + k));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      next[i + 1] += basis[i] / (k + 1);
      next[i] -= basis[i] * shift / (k + 1);
    }
    basis = std::move(next);
  }
  g.coefficients = coeffs;
  g.leading = coeffs.back();
  Rational e = g.leading;
  for (int k = 2; k <= r + 1; ++k) e *= k;
  if (e.get_den() != 1) engine_assert_failed("normalized leading coefficient is not an integer");
  g.multiplicity = e.get_num().get_si();
  return g;
}

int samuel_multiplicity(const TFModule& i, std::uint64_t seed, const Config& cfg) {
  if (i.rank() != 1) throw Error(ErrorCode::InvalidArgument, "Samuel multiplicity expects an ideal");
  if (!has_finite_colength(i, cfg)) throw Error(ErrorCode::NotMPrimary, "Samuel multiplicity needs an m-primary ideal");
  return br_multiplicity_reduction(i, seed, cfg);
}

bool is_integral_element(const Column& v, const TFModule& m, std::uint64_t seed, const Config& cfg) {
  if (static_cast<int>(v.size()) != m.rank()) throw Error(ErrorCode::InvalidArgument, "vector has the wrong length");
  std::vector<Column> cols = m.columns();
  cols.push_back(v);
  const TFModule mv(m.ring(), m.rank(), std::move(cols));
  auto gens = [&](const TFModule& x) {
    std::vector<BiPoly> out;
    const TFModule mg = has_finite_colength(x, cfg) ? minimal_generators(x, cfg) : x;
    for (auto& [s, f] : maximal_minors(mg, cfg))
      if (!f.is_zero()) out.push_back(f);
    return out;
  };
  std::vector<BiPoly> j = gens(m), ip = gens(mv);
  auto content = [](const std::vector<BiPoly>& g) {
    BiPoly c = g[0];
    for (const auto& f : g) c = gcd(c, f);
    return c;
  };
  const BiPoly cj = content(j), ci = content(ip);
  auto q = divide_exact(cj, ci);
  if (!q || !is_unit(*q)) return false;
  std::vector<BiPoly> j0, i0;
  for (const auto& f : j) j0.push_back(*divide_exact(f, ci));
  for (const auto& f : ip) i0.push_back(*divide_exact(f, ci));
  const TFModule J = ideal(m.ring(), j0), I = ideal(m.ring(), i0);
  if (!has_finite_colength(J, cfg)) return false;
  if (colength(I, cfg) == 0) return colength(J, cfg) == 0;
  return samuel_multiplicity(J, seed, cfg) == samuel_multiplicity(I, seed, cfg);
}

TFModule monomial_ideal_closure(const TFModule& i) {
  if (i.rank() != 1) throw Error(ErrorCode::InvalidArgument, "closure expects an ideal");
  std::vector<std::pair<long long, long long>> e;
  for (const auto& c : i.columns()) {
    if (c[0].is_zero()) continue;
    if (c[0].terms().size() != 1) throw Error(ErrorCode::NotMonomial, "generator " + c[0].to_string() + " is not a monomial");
    e.emplace_back(c[0].terms().begin()->first.first, c[0].terms().begin()->first.second);
  }
  if (e.empty()) throw Error(ErrorCode::ZeroModule, "zero ideal");
  long long max_a = 0, max_b = 0;
  for (auto [a, b] : e) {
    max_a = std::max(max_a, a);
    max_b = std::max(max_b, b);
  }
  // (a, b) lies in conv(e) + R_{>=0}^2
  auto inside = [&](long long a, long long b) {
    for (auto [ai, bi] : e) {
      if (ai > a) continue;
      if (bi <= b) return true;
      for (auto [aj, bj] : e) {
        if (aj <= a) continue;
        // b * (aj - ai) >= (aj - a) * bi + (a - ai) * bj
        if (b * (aj - ai) >= (aj - a) * bi + (a - ai) * bj) return true;
      }
    }
    return false;
  };
  std::vector<std::pair<long long, long long>> pts;
  for (long long a = max_a; a >= 0; --a)
    for (long long b = 0; b <= max_b; ++b)
      if (inside(a, b)) {
        pts.emplace_back(a, b);
        break;
      }
  // smallest b for each a, scanned with a increasing; corners only
  std::reverse(pts.begin(), pts.end());
  std::vector<BiPoly> gens;
  const FieldElement one = FieldElement::from_int(i.ring().field, 1);
  long long best_b = max_b + 1;
  for (auto [a, b] : pts) {
    if (b >= best_b) continue;
    best_b = b;
    gens.push_back(BiPoly::monomial(one, static_cast<int>(a), static_cast<int>(b), i.ring().vars));
  }
  std::reverse(gens.begin(), gens.end());
  return ideal(i.ring(), gens);
}

FormulaCheck verify_reduction_length(const TFModule& m, std::uint64_t seed, std::size_t samples, const Config& cfg) {
  FormulaCheck c;
  c.name = "length of M/N equals binom(ord, 2)";
  if (!is_contracted_from_V(m, cfg)) {
    c.applicable = false;
    c.detail = "module is not contracted from the order valuation";
    return c;
  }
  const int lm = colength(m, cfg);
  const int n = lm == 0 ? 0 : order(m, cfg);
  c.rhs = choose2(n);
  c.holds = true;
  for (std::size_t k = 0; k < samples; ++k) {
    const int ln = lm == 0 ? 0 : generic_reduction(m, seed + k, cfg).colength;
    c.per_seed.push_back(ln - lm);
    c.holds = c.holds && ln - lm == c.rhs;
  }
  c.lhs = *std::min_element(c.per_seed.begin(), c.per_seed.end());
  return c;
}

FormulaCheck verify_local_formula(const TFModule& m, std::uint64_t seed, const Config& cfg) {
  FormulaCheck c;
  c.name = "e(M) = colength + binom(ord, 2)";
  if (!is_contracted_from_V(m, cfg)) {
    c.applicable = false;
    c.detail = "module is not contracted from the order valuation";
    return c;
  }
  const int lm = colength(m, cfg);
  const int n = lm == 0 ? 0 : order(m, cfg);
  c.lhs = br_multiplicity_reduction(m, seed, cfg);
  c.rhs = lm + choose2(n);
  c.holds = c.lhs == c.rhs;
  c.detail = "e = " + std::to_string(c.lhs) + ", colength = " + std::to_string(lm) + ", ord = " + std::to_string(n);
  return c;
}

FormulaCheck verify_mult_formula(const TFModule& m, std::uint64_t seed, const Config& cfg) {
  FormulaCheck c;
  c.name = "e(M) = e(I(M)) - colength(I(M)) + colength(M)";
  if (!has_finite_colength(m, cfg)) {
    c.applicable = false;
    c.detail = "module has infinite colength";
    return c;
  }
  const int lm = colength(m, cfg);
  int ei = 0, li = 0;
  if (lm != 0) {
    const TFModule i = minors_ideal(minimal_generators(m, cfg), cfg);
    li = colength(i, cfg);
    ei = samuel_multiplicity(i, seed, cfg);
  }
  c.lhs = br_multiplicity_reduction(m, seed, cfg);
  c.rhs = static_cast<long long>(ei) - li + lm;
  c.holds = c.lhs == c.rhs;
  c.detail = "e(M) = " + std::to_string(c.lhs) + ", e(I) = " + std::to_string(ei) + ", colength(I) = " +
             std::to_string(li) + ", colength(M) = " + std::to_string(lm);
  return c;
}

FormulaCheck verify_tree_multiplicity(const TFModule& m, std::uint64_t seed, const Config& cfg) {
  FormulaCheck c;
  c.name = "e(M) = sum of e(contracted part) [T:R] over the tree";
  if (!has_finite_colength(m, cfg)) {
    c.applicable = false;
    c.detail = "module has infinite colength";
    return c;
  }
  const HDTree tree = hd_decompose(m, cfg);
  for (const HDNode* node : hd_nodes(tree)) {
    const long long e = br_multiplicity_reduction(node->contracted_part, seed, cfg);
    c.per_seed.push_back(e);
    c.rhs += e * static_cast<long long>(node->degree_over_root);
  }
  c.lhs = br_multiplicity_reduction(m, seed, cfg);
  c.holds = c.lhs == c.rhs;
  return c;
}

}  // namespace icm
