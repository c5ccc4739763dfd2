#include <algorithm>
#include <map>
#include <random>

#include "icm/error.hpp"
#include "icm/unipoly.hpp"

namespace icm {

namespace {

FieldElement one_of(const Tower& t) { return FieldElement::from_int(t, 1); }

UniPoly one_poly(const UniPoly& like) { return UniPoly::constant(one_of(like.tower()), like.var()); }

UniPoly x_poly(const UniPoly& like) { return UniPoly::monomial(one_of(like.tower()), 1, like.var()); }

Integer field_size(const Tower& t) {
  Integer q = 1;
  Integer p(std::to_string(t->modulus()));
  for (std::size_t i = 0; i < t->degree(); ++i) q *= p;
  return q;
}

FieldElement random_element(const Tower& t, std::mt19937_64& rng) {
  std::vector<std::uint64_t> c(t->degree());
  std::uniform_int_distribution<std::uint64_t> dist(0, t->modulus() - 1);
  for (auto& v : c) v = dist(rng);
  return FieldElement::from_flat_mod(t, std::move(c));
}

UniPoly random_poly(const Tower& t, int deg_below, const std::string& var, std::mt19937_64& rng) {
  std::vector<FieldElement> c;
  for (int i = 0; i < deg_below; ++i) c.push_back(random_element(t, rng));
  return UniPoly(t, std::move(c), var);
}

// ---------------------------------------------------------------------------
// Finite fields

// Exact p-th root of a polynomial whose exponents are all multiples of p.
UniPoly pth_root(const UniPoly& f) {
  const Tower& t = f.tower();
  const std::size_t p = static_cast<std::size_t>(t->modulus());
  Integer e = field_size(t) / Integer(std::to_string(t->modulus()));
  std::vector<FieldElement> c;
  for (std::size_t i = 0; i * p < f.coeffs().size(); ++i) c.push_back(f.coeff(i * p).pow(e));
  return UniPoly(t, std::move(c), f.var());
}

void squarefree_finite(const UniPoly& f, int mult, std::vector<FactorPower>& out) {
  UniPoly c = gcd(f, f.derivative());
  UniPoly w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    UniPoly y = gcd(w, c);
    UniPoly z = w / y;
    if (z.degree() > 0) out.push_back({z.monic(), i * mult});
    ++i;
    w = y;
    c = c / y;
  }
  if (c.degree() > 0) {
    const int p = static_cast<int>(f.tower()->modulus());
    squarefree_finite(pth_root(c), mult * p, out);
  }
}

std::vector<std::pair<UniPoly, int>> distinct_degree(UniPoly f) {
  std::vector<std::pair<UniPoly, int>> out;
  const Integer q = field_size(f.tower());
  UniPoly x = x_poly(f);
  UniPoly h = x % f;
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    h = h.powmod(q, f);
    UniPoly g = gcd(h - x, f);
    if (g.degree() > 0) {
      out.push_back({g, d});
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back({f.monic(), f.degree()});
  return out;
}

void equal_degree(const UniPoly& g, int d, std::mt19937_64& rng, std::vector<UniPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const Tower& t = g.tower();
  const Integer q = field_size(t);
  Integer qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  const bool char2 = t->modulus() == 2;
  for (;;) {
    UniPoly a = random_poly(t, g.degree(), g.var(), rng);
    if (a.degree() <= 0) continue;
    UniPoly b;
    if (char2) {
      // absolute trace from GF(q^d) down to GF(2)
      const std::size_t k = t->degree() * static_cast<std::size_t>(d);
      UniPoly s = a % g;
      b = s;
      for (std::size_t i = 1; i < k; ++i) {
        s = (s * s) % g;
        b = b + s;
      }
    } else {
      b = a.powmod((qd - 1) / 2, g) - one_poly(g);
    }
    UniPoly h = gcd(b, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

std::vector<FactorPower> factor_finite(const UniPoly& f) {
  std::vector<FactorPower> sqf;
  squarefree_finite(f.monic(), 1, sqf);
  std::mt19937_64 rng(0x51ed2701u + static_cast<unsigned>(f.degree()));
  std::vector<FactorPower> out;
  for (const auto& part : sqf) {
    for (const auto& [g, d] : distinct_degree(part.factor)) {
      std::vector<UniPoly> pieces;
      equal_degree(g, d, rng, pieces);
      for (auto& pc : pieces) out.push_back({pc, part.multiplicity});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Characteristic zero

std::vector<FactorPower> squarefree_char0(const UniPoly& f) {
  std::vector<FactorPower> out;
  UniPoly a = f.monic();
  UniPoly b = a.derivative();
  UniPoly c = gcd(a, b);
  UniPoly w = a / c;
  UniPoly y = b / c;
  UniPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    UniPoly g = gcd(w, z);
    if (g.degree() > 0) out.push_back({g, i});
    w = w / g;
    y = z / g;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

using IntPoly = std::vector<Integer>;

IntPoly to_primitive_integers(const UniPoly& f) {
  Integer den = 1;
  for (const auto& c : f.coeffs()) {
    const Rational& q = c.flat_rat()[0];
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  }
  IntPoly out;
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    Rational v = c.flat_rat()[0] * den;
    out.push_back(v.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0)
    for (auto& v : out) v /= g;
  if (out.back() < 0)
    for (auto& v : out) v = -v;
  return out;
}

UniPoly from_integers(const Tower& t, const IntPoly& c, const std::string& var) {
  std::vector<FieldElement> v;
  for (const auto& x : c) v.push_back(FieldElement::from_rational(t, Rational(x)));
  return UniPoly(t, std::move(v), var);
}

Integer symmetric_lift(std::uint64_t v, std::uint64_t p) {
  Integer r(std::to_string(v));
  Integer pp(std::to_string(p));
  if (2 * r > pp) r -= pp;
  return r;
}

// Factors a primitive squarefree integer polynomial over Q.
std::vector<UniPoly> factor_squarefree_rational(const IntPoly& f, const std::string& var, const Config& cfg) {
  const Tower qq = FieldTower::rationals();
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {from_integers(qq, f, var).monic()};

  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  const Integer lc = abs(f.back());
  // Coefficient bound for lc * (any factor of degree <= n/2).
  Integer binom = 1;
  const int half = n / 2;
  for (int i = 1; i <= half; ++i) binom = binom * (half - i + 1) / i;
  Integer bound = 2 * lc * norm * binom * binom + 1;

  std::uint64_t prime = (std::uint64_t{1} << 62) - 57;
  Tower fp;
  UniPoly fmod;
  for (int attempts = 0;; --prime) {
    if (!is_prime_u64(prime)) continue;
    if (++attempts > 200) throw Error(ErrorCode::CapExceeded, "no suitable prime for rational factorization");
    Integer pp(std::to_string(prime));
    if (lc % pp == 0) continue;
    fp = FieldTower::prime_field(prime);
    std::vector<FieldElement> c;
    for (const auto& x : f) c.push_back(FieldElement::from_rational(fp, Rational(x)));
    fmod = UniPoly(fp, std::move(c), var);
    if (gcd(fmod, fmod.derivative()).degree() == 0) break;
  }
  if (Integer(std::to_string(prime)) <= bound)
    throw Error(ErrorCode::CapExceeded, "coefficients too large for single-prime rational factorization");

  std::vector<UniPoly> modular;
  for (const auto& fpw : factor_finite(fmod)) modular.push_back(fpw.factor);

  // Recombination: try subsets of the modular factors in order of size.
  std::vector<UniPoly> found;
  IntPoly rest = f;
  std::vector<bool> used(modular.size(), false);
  auto try_subset = [&](const std::vector<std::size_t>& idx) -> bool {
    UniPoly prod = UniPoly::constant(FieldElement::from_rational(fp, Rational(rest.back())), var);
    for (auto i : idx) prod = prod * modular[i];
    IntPoly cand;
    for (std::size_t i = 0; i <= static_cast<std::size_t>(prod.degree()); ++i)
      cand.push_back(symmetric_lift(prod.coeff(i).flat_mod()[0], prime));
    UniPoly g = from_integers(qq, cand, var);
    UniPoly r = from_integers(qq, rest, var);
    auto [quo, rem] = r.divmod(g);
    if (!rem.is_zero()) return false;
    found.push_back(g.monic());
    rest = to_primitive_integers(quo);
    return true;
  };

  std::size_t remaining = modular.size();
  for (std::size_t s = 1; 2 * s <= remaining; ++s) {
    if (s >= 2) {
      int rest_deg = static_cast<int>(rest.size()) - 1;
      if (rest_deg > static_cast<int>(cfg.rational_factor_degree_cap))
        throw Error(ErrorCode::CapExceeded, "rational factorization of a degree-" + std::to_string(rest_deg) +
                                                " part without rational roots exceeds the configured cap");
    }
    bool restart = true;
    while (restart) {
      restart = false;
      std::vector<std::size_t> avail;
      for (std::size_t i = 0; i < modular.size(); ++i)
        if (!used[i]) avail.push_back(i);
      if (2 * s > avail.size()) break;
      std::vector<bool> pick(avail.size(), false);
      std::fill(pick.begin(), pick.begin() + static_cast<long>(s), true);
      do {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < avail.size(); ++i)
          if (pick[i]) idx.push_back(avail[i]);
        if (try_subset(idx)) {
          for (auto i : idx) used[i] = true;
          remaining -= s;
          restart = true;
          break;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  }
  if (rest.size() > 1) found.push_back(from_integers(qq, rest, var).monic());
  return found;
}

std::vector<UniPoly> factor_squarefree_char0(const UniPoly& f, const Config& cfg);

// Norm of g in K[t] down to L[t], K = L(a): determinant of multiplication by g
// on the power basis of a.
UniPoly norm_down(const UniPoly& g) {
  const Tower& k = g.tower();
  const Tower& l = k->parent();
  const std::size_t d = k->levels().back().degree;
  const std::size_t block = l->degree();
  // G as sum_j a^j P_j(t)
  std::vector<std::vector<FieldElement>> rows(d);
  for (std::size_t j = 0; j < d; ++j) rows[j].assign(static_cast<std::size_t>(g.degree() + 1), FieldElement(l));
  for (std::size_t i = 0; i < g.coeffs().size(); ++i) {
    const auto& flat = g.coeffs()[i].flat_rat();
    for (std::size_t j = 0; j < d; ++j) {
      std::vector<Rational> part(flat.begin() + static_cast<long>(j * block),
                                 flat.begin() + static_cast<long>((j + 1) * block));
      rows[j][i] = FieldElement::from_flat_rat(l, std::move(part));
    }
  }
  std::vector<UniPoly> col(d);
  for (std::size_t j = 0; j < d; ++j) col[j] = UniPoly(l, rows[j], g.var());
  const auto& mp = k->minimal_poly();
  std::vector<std::vector<UniPoly>> mat(d, std::vector<UniPoly>(d));
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) mat[i][j] = col[i];
    // multiply by a
    UniPoly top = col[d - 1];
    for (std::size_t i = d - 1; i > 0; --i) col[i] = col[i - 1];
    col[0] = UniPoly(l, g.var());
    for (std::size_t i = 0; i < d; ++i) col[i] = col[i] - top * mp[i];
  }
  // fraction-free elimination
  int sign = 1;
  UniPoly prev = UniPoly::constant(one_of(l), g.var());
  for (std::size_t kk = 0; kk < d; ++kk) {
    std::size_t piv = kk;
    while (piv < d && mat[piv][kk].is_zero()) ++piv;
    if (piv == d) return UniPoly(l, g.var());
    if (piv != kk) {
      std::swap(mat[piv], mat[kk]);
      sign = -sign;
    }
    for (std::size_t i = kk + 1; i < d; ++i) {
      for (std::size_t j = kk + 1; j < d; ++j)
        mat[i][j] = (mat[kk][kk] * mat[i][j] - mat[i][kk] * mat[kk][j]) / prev;
      mat[i][kk] = UniPoly(l, g.var());
    }
    prev = mat[kk][kk];
  }
  UniPoly det = mat[d - 1][d - 1];
  return sign < 0 ? -det : det;
}

std::vector<UniPoly> factor_squarefree_tower(const UniPoly& f, const Config& cfg) {
  const Tower& k = f.tower();
  const std::size_t d = k->levels().back().degree;
  if (f.degree() <= 1) return {f.monic()};
  if (static_cast<std::size_t>(f.degree()) * d > cfg.rational_factor_degree_cap)
    throw Error(ErrorCode::NotSupported, "factorization over " + k->describe() + " beyond the configured degree");
  const FieldElement a = FieldElement::generator(k, k->level_count());
  for (long long s = 0; s < 50; ++s) {
    FieldElement shift = a * FieldElement::from_int(k, -s);
    UniPoly g = f.shift(shift);
    UniPoly nrm = norm_down(g);
    if (gcd(nrm, nrm.derivative()).degree() > 0) continue;
    std::vector<UniPoly> out;
    UniPoly rest = f.monic();
    for (const auto& h : factor_squarefree_char0(nrm, cfg)) {
      UniPoly back = h.embed(k).shift(a * FieldElement::from_int(k, s));
      UniPoly piece = gcd(rest, back);
      if (piece.degree() > 0) {
        out.push_back(piece);
        rest = rest / piece;
      }
    }
    if (rest.degree() > 0) engine_assert_failed("norm factorization did not exhaust the polynomial");
    return out;
  }
  throw Error(ErrorCode::NotSupported, "no squarefree norm shift found");
}

std::vector<UniPoly> factor_squarefree_char0(const UniPoly& f, const Config& cfg) {
  if (f.tower()->is_base()) return factor_squarefree_rational(to_primitive_integers(f), f.var(), cfg);
  if (f.tower()->levels().back().degree == 1) {
    // a degree-one level adds nothing: factor below and embed
    std::vector<FieldElement> c;
    const Tower& l = f.tower()->parent();
    for (const auto& x : f.coeffs()) c.push_back(FieldElement::from_flat_rat(l, x.flat_rat()));
    std::vector<UniPoly> out;
    for (auto& h : factor_squarefree_char0(UniPoly(l, std::move(c), f.var()), cfg)) out.push_back(h.embed(f.tower()));
    return out;
  }
  return factor_squarefree_tower(f, cfg);
}

}  // namespace

std::vector<FactorPower> factor_univariate(const UniPoly& p, const Config& cfg) {
  if (p.is_zero()) throw Error(ErrorCode::InvalidArgument, "cannot factor the zero polynomial");
  if (static_cast<std::size_t>(p.degree()) > cfg.max_univariate_degree)
    throw Error(ErrorCode::CapExceeded, "polynomial degree above the configured cap");
  if (p.tower()->degree() > cfg.max_tower_degree)
    throw Error(ErrorCode::CapExceeded, "tower degree above the configured cap");
  std::vector<FactorPower> raw;
  if (p.degree() == 0) return {};
  if (p.tower()->kind() == BaseKind::Prime) {
    raw = factor_finite(p);
  } else {
    for (const auto& part : squarefree_char0(p))
      for (auto& h : factor_squarefree_char0(part.factor, cfg)) raw.push_back({h, part.multiplicity});
  }
  std::map<std::pair<int, std::string>, FactorPower> merged;
  for (auto& fp : raw) {
    auto key = std::make_pair(fp.factor.degree(), fp.factor.to_string());
    auto it = merged.find(key);
    if (it == merged.end())
      merged.emplace(key, fp);
    else
      it->second.multiplicity += fp.multiplicity;
  }
  std::vector<FactorPower> out;
  for (auto& [k, v] : merged) out.push_back(v);
  return out;
}

bool is_irreducible(const UniPoly& p, const Config& cfg) {
  if (p.degree() < 1) return false;
  if (p.degree() == 1) return true;
  auto f = factor_univariate(p, cfg);
  return f.size() == 1 && f[0].multiplicity == 1;
}

Tower extend_tower(const Tower& k, const UniPoly& p, const std::string& name, const Config& cfg) {
  UniPoly q = p.embed(k);
  if (q.degree() < 1) throw Error(ErrorCode::InvalidArgument, "extension polynomial must have positive degree");
  if (k->degree() * static_cast<std::size_t>(q.degree()) > cfg.max_tower_degree)
    throw Error(ErrorCode::CapExceeded, "extension would exceed the configured tower degree");
  if (!is_irreducible(q, cfg)) throw Error(ErrorCode::NotIrreducible, q.to_string() + " factors over " + k->describe());
  return FieldTower::extend_unchecked(k, q.monic().coeffs(), name);
}

std::vector<FieldElement> enumerate_finite_field(const Tower& t, std::size_t limit) {
  if (t->kind() != BaseKind::Prime) throw Error(ErrorCode::InvalidArgument, "enumeration needs a finite field");
  Integer q = field_size(t);
  if (q > Integer(std::to_string(limit))) throw Error(ErrorCode::CapExceeded, "field too large to enumerate");
  std::vector<FieldElement> out;
  std::vector<std::uint64_t> c(t->degree(), 0);
  const std::uint64_t p = t->modulus();
  for (;;) {
    out.push_back(FieldElement::from_flat_mod(t, c));
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == p) c[i++] = 0;
    if (i == c.size()) break;
  }
  return out;
}

}  // namespace icm
