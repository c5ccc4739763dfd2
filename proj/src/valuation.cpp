#include "icm/valuation.hpp"

namespace icm {

namespace {

std::vector<Column> pick(const TFModule& m, const std::vector<std::size_t>& idx) {
  std::vector<Column> out;
  for (auto j : idx) out.push_back(m.columns()[j]);
  return out;
}

// Splits a rank one module as g * J with J of finite colength.
std::pair<BiPoly, TFModule> split_content(const TFModule& m) {
  BiPoly g;
  bool any = false;
  for (const auto& c : m.columns()) {
    if (c[0].is_zero()) continue;
    g = any ? gcd(g, c[0]) : c[0];
    any = true;
  }
  if (!any) throw Error(ErrorCode::ZeroModule, "zero ideal");
  std::vector<BiPoly> q;
  for (const auto& c : m.columns()) {
    if (c[0].is_zero()) continue;
    auto d = divide_exact(c[0], g);
    if (!d) engine_assert_failed("gcd does not divide a generator");
    q.push_back(*d);
  }
  return {g, ideal(m.ring(), q)};
}

}  // namespace

WitnessColumns select_witness(const TFModule& m, const Config& cfg) {
  const int r = m.rank();
  if (r == 0 || m.column_count() == 0) throw Error(ErrorCode::ZeroModule, "no witness for the zero module");
  if (m.column_count() < static_cast<std::size_t>(r))
    throw Error(ErrorCode::RankDeficient, "fewer generators than the rank");
  const int n = order(m, cfg);
  WitnessColumns w;
  const std::size_t subsets = binomial(m.column_count(), static_cast<std::size_t>(r));
  if (m.column_count() <= 62 && subsets <= std::min(cfg.witness_subset_cap, cfg.minor_scan_limit)) {
    for (const auto& [s, f] : maximal_minors(m, cfg)) {
      if (!f.is_zero() && f.ord() == n) {
        w.columns = s;
        w.determinant = f;
        w.det_order = n;
        return w;
      }
    }
    engine_assert_failed("no r-subset attains the order of the module");
  }
  const Tower& t = m.ring().field;
  const FieldElement one = FieldElement::from_int(t, 1);
  for (long long t0 = 0; t0 <= n + 1; ++t0) {
    LineValuation lv = min_minor_valuation_along(m, one, FieldElement::from_int(t, t0));
    if (lv.valuation == n) {
      w.columns = lv.columns;
      w.determinant = determinant(pick(m, lv.columns));
      w.det_order = w.determinant.ord();
      if (w.det_order != n) engine_assert_failed("specialized witness determinant has the wrong order");
      return w;
    }
  }
  engine_assert_failed("line specialization did not reach the order of the module");
}

TFModule witness_closure(const LocalRing& ring, const std::vector<Column>& c, int n, const Config& cfg) {
  const int r = static_cast<int>(c.size());
  if (n == 0) return free_module(ring, r);
  std::vector<Column> adj = adjugate_truncated(c, n);
  TruncationSpace space(ring.field, r, n);
  std::vector<Column> basis, images;
  const FieldElement one = FieldElement::from_int(ring.field, 1);
  for (int deg = 0; deg < n; ++deg)
    for (int b = 0; b <= deg; ++b) {
      const BiPoly mu = BiPoly::monomial(one, deg - b, b, ring.vars);
      for (int k = 0; k < r; ++k) {
        Column e = zero_column(ring, r);
        e[static_cast<std::size_t>(k)] = mu;
        Column img;
        for (int i = 0; i < r; ++i) img.push_back(adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].mul_truncated(mu, n));
        basis.push_back(std::move(e));
        images.push_back(std::move(img));
      }
    }
  std::vector<Column> gens;
  for (const auto& coeffs : space.kernel_of(images)) gens.push_back(combine_columns(basis, coeffs, r));
  const TFModule power = maximal_power_module(ring, r, n);
  for (const auto& col : power.columns()) gens.push_back(col);
  return minimal_generators(TFModule(ring, r, std::move(gens)).with_finite_hint(), cfg);
}

TFModule v_contraction(const TFModule& m, const Config& cfg) {
  const int r = m.rank();
  if (r == 0) return m;
  if (has_finite_colength(m, cfg)) {
    WitnessColumns w = select_witness(m, cfg);
    return witness_closure(m.ring(), pick(m, w.columns), w.det_order, cfg);
  }
  if (is_free(m, cfg)) return m;
  if (r == 1) {
    auto [g, j] = split_content(m);
    TFModule pj = v_contraction(j, cfg);
    std::vector<BiPoly> gens;
    for (const auto& col : pj.columns()) gens.push_back(col[0] * g);
    return ideal(m.ring(), gens);
  }
  throw Error(ErrorCode::NotSupported, "V-contraction of a non-free module of rank >= 2 with infinite colength");
}

bool is_contracted_from_V(const TFModule& m, const Config& cfg) {
  const int r = m.rank();
  if (r == 0) return true;
  if (!has_finite_colength(m, cfg)) {
    if (is_free(m, cfg)) return true;
    if (r == 1) return is_contracted_from_V(split_content(m).second, cfg);
    throw Error(ErrorCode::NotSupported, "V-contraction test of a non-free module with infinite colength");
  }
  TFModule p = v_contraction(m, cfg);
  if (!modules_equal(p, m, cfg)) return false;
  const int n = order(m, cfg);
  TFModule mg = minimal_generators(m, cfg);
  if (binomial(mg.column_count(), static_cast<std::size_t>(r)) <= cfg.minor_scan_limit) {
    if (!modules_equal(minors_ideal(mg, cfg), maximal_power(m.ring(), n), cfg))
      engine_assert_failed("V-contracted module whose minors ideal is not a power of the maximal ideal");
  }
  return true;
}

int v_length(const TFModule& m, const Config& cfg) { return select_witness(m, cfg).det_order; }

}  // namespace icm
