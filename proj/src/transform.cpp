#include "icm/transform.hpp"

#include <algorithm>

namespace icm {

namespace {

// Old coordinates through (u, v) with u = l: x = u - c v, y = v, or x = v, y = u.
std::pair<BiPoly, BiPoly> frame(const LocalRing& ring, const ContractingGenerator& l) {
  const BiPoly u = ring.x(), v = ring.y();
  if (l.is_y) return {v, u};
  return {u - v * l.c, v};
}

std::string fresh_generator(const LocalRing& ring) {
  std::vector<std::string> taken = ring.field->generator_names();
  taken.push_back(ring.vars[0]);
  taken.push_back(ring.vars[1]);
  auto free_name = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) == taken.end(); };
  for (char ch = 'a'; ch <= 'w'; ++ch) {
    std::string s(1, ch);
    if (free_name(s)) return s;
  }
  for (int i = 1;; ++i) {
    std::string s = "a" + std::to_string(i);
    if (free_name(s)) return s;
  }
}

}  // namespace

ContractingGenerator contracting_candidate(const LocalRing& ring, std::size_t i) {
  ContractingGenerator l;
  if (i == 1) {
    l.is_y = true;
    l.c = FieldElement::from_int(ring.field, 0);
    l.element = ring.y();
    return l;
  }
  l.c = FieldElement::from_int(ring.field, i == 0 ? 0 : static_cast<long long>(i - 1));
  l.element = ring.x() + ring.y() * l.c;
  return l;
}

int line_colength(const TFModule& m, const ContractingGenerator& l) {
  const Tower& t = m.ring().field;
  if (l.is_y) return min_minor_valuation_along(m, FieldElement::from_int(t, 1), FieldElement::from_int(t, 0)).valuation;
  return min_minor_valuation_along(m, -l.c, FieldElement::from_int(t, 1)).valuation;
}

ContractingGenerator choose_contracting_generator(const TFModule& m, const Config& cfg) {
  const int n = order(m, cfg);
  const Tower& t = m.ring().field;
  for (std::size_t i = 0; i < cfg.contracting_pool; ++i) {
    if (i >= 2 && t->kind() == BaseKind::Prime && t->degree() == 1 && i - 1 >= t->modulus()) break;
    ContractingGenerator l = contracting_candidate(m.ring(), i);
    if (line_colength(m, l) == n) return l;
  }
  throw Error(ErrorCode::NoContractingGenerator,
              "no x + c*y in the candidate pool has lambda(R/(x, I(M))) = ord(M)");
}

std::vector<TransformPoint> exceptional_points_of(const std::vector<BiPoly>& gens, int n, const LocalRing& ring,
                                                  const ContractingGenerator& l, const Config& cfg) {
  auto [fx, fy] = frame(ring, l);
  UniPoly iota;
  bool any = false, full_degree = false;
  for (const auto& f : gens) {
    if (f.is_zero()) continue;
    UniPoly g = f.substitute(fx, fy).homogeneous_part(n).dehomogenize("t");
    if (g.is_zero()) continue;
    full_degree = full_degree || g.degree() == n;
    iota = any ? gcd(iota, g) : g.monic();
    any = true;
  }
  if (!any) throw Error(ErrorCode::InvalidArgument, "no generator of the given order");
  std::vector<TransformPoint> out;
  auto make = [&](Chart chart, const UniPoly& p) {
    TransformPoint pt;
    pt.chart = chart;
    pt.minimal_poly = p;
    pt.residue_degree = p.degree();
    pt.contracting = l.element;
    pt.frame_x = fx;
    pt.frame_y = fy;
    return pt;
  };
  if (iota.degree() > 0)
    for (const auto& fp : factor_univariate(iota, cfg)) out.push_back(make(Chart::DivideByX, fp.factor));
  if (!full_degree)
    out.push_back(make(Chart::DivideByY, UniPoly::linear_root(FieldElement::from_int(ring.field, 0), "t")));
  std::stable_sort(out.begin(), out.end(), [](const TransformPoint& a, const TransformPoint& b) {
    if (a.chart != b.chart) return a.chart < b.chart;
    return a.minimal_poly.to_string() < b.minimal_poly.to_string();
  });
  return out;
}

std::vector<TransformPoint> exceptional_points(const TFModule& m, const ContractingGenerator& l, const Config& cfg) {
  if (m.rank() == 0 || is_free(m, cfg)) return {};
  const int n = order(m, cfg);
  TFModule mg = has_finite_colength(m, cfg) ? minimal_generators(m, cfg) : m;
  std::vector<BiPoly> minors;
  for (auto& [s, f] : maximal_minors(mg, cfg))
    if (!f.is_zero()) minors.push_back(f);
  return exceptional_points_of(minors, n, m.ring(), l, cfg);
}

LocalRing make_transform_ring(const LocalRing& ring, const TransformPoint& p, const Config& cfg) {
  LocalRing t = ring;
  TransformStep step;
  step.point = p;
  step.old_vars = ring.vars;
  step.new_vars = ring.vars;
  FieldElement root;
  if (p.chart == Chart::DivideByY) {
    root = FieldElement::from_int(ring.field, 0);
  } else if (p.residue_degree == 1) {
    root = -p.minimal_poly.coeff(0);
  } else {
    step.generator = fresh_generator(ring);
    t.field = extend_tower(ring.field, p.minimal_poly, step.generator, cfg);
    root = FieldElement::generator(t.field, t.field->level_count());
  }
  const BiPoly U = BiPoly::variable(t.field, 0, t.vars), T = BiPoly::variable(t.field, 1, t.vars);
  BiPoly u, v;
  if (p.chart == Chart::DivideByX) {
    u = U;
    v = U * (BiPoly::constant(root.embed(t.field), t.vars) + T);
  } else {
    u = U * T;
    v = U;
  }
  step.x_image = p.frame_x.embed(t.field).substitute(u, v);
  step.y_image = p.frame_y.embed(t.field).substitute(u, v);
  t.path.push_back(std::move(step));
  return t;
}

std::vector<Column> transform_columns(const std::vector<Column>& cols, const LocalRing& t) {
  if (t.path.empty()) throw Error(ErrorCode::InvalidArgument, "ring is not a quadratic transform");
  const TransformStep& s = t.path.back();
  std::vector<Column> out;
  for (const auto& c : cols) {
    Column n;
    for (const auto& f : c) n.push_back(f.embed(t.field).substitute(s.x_image, s.y_image).with_vars(t.vars));
    out.push_back(std::move(n));
  }
  return out;
}

TFModule transform_module(const TFModule& m, const LocalRing& t) {
  return TFModule(t, m.rank(), transform_columns(m.columns(), t));
}

TFModule proper_transform_ideal(const TFModule& i, const LocalRing& t, const Config&) {
  if (i.rank() != 1) throw Error(ErrorCode::InvalidArgument, "proper transform expects an ideal");
  int n = kInfinity;
  for (const auto& c : i.columns()) n = std::min(n, c[0].ord());
  if (n == kInfinity) throw Error(ErrorCode::ZeroModule, "zero ideal");
  std::vector<BiPoly> gens;
  for (const auto& c : transform_columns(i.columns(), t))
    if (!c[0].is_zero()) gens.push_back(c[0].divide_monomial(n, 0));
  return ideal(t, gens);
}

}  // namespace icm
