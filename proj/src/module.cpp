#include "icm/module.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace icm {

namespace {

FieldElement eval_at(const BiPoly& f, const FieldElement& x0, const FieldElement& y0) {
  FieldElement acc(f.tower());
  for (const auto& [e, c] : f.terms()) acc += c * x0.pow(static_cast<std::uint64_t>(e.first)) *
                                             y0.pow(static_cast<std::uint64_t>(e.second));
  return acc;
}

// Rank over the residue field of a matrix of field elements (rows x cols).
std::size_t scalar_rank(std::vector<std::vector<FieldElement>> rows) {
  std::size_t rank = 0;
  const std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    FieldElement inv = rows[rank][c].inverse();
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      FieldElement f = rows[i][c] * inv;
      for (std::size_t k = c; k < ncols; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

bool generically_full_rank(const Tower& t, int rank, const std::vector<Column>& cols) {
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int trial = 0; trial < 4; ++trial) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    FieldElement x0 = FieldElement::from_int(t, static_cast<long long>((state >> 33) % 1000003) + 2);
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    FieldElement y0 = FieldElement::from_int(t, static_cast<long long>((state >> 33) % 1000003) + 3);
    std::vector<std::vector<FieldElement>> rows(static_cast<std::size_t>(rank));
    for (int i = 0; i < rank; ++i)
      for (const auto& c : cols) rows[static_cast<std::size_t>(i)].push_back(eval_at(c[static_cast<std::size_t>(i)], x0, y0));
    if (scalar_rank(rows) == static_cast<std::size_t>(rank)) return true;
  }
  return false;
}

using MinorTable = std::map<std::uint64_t, BiPoly>;

// Minors on rows [0, k) for every k-subset of columns (bitmask keys), built by
// expanding along the last row. `trunc` < 0 means exact.
std::vector<MinorTable> minor_tables(const std::vector<Column>& cols, int rows, int trunc,
                                     const std::vector<int>& row_map) {
  const std::size_t n = cols.size();
  std::vector<MinorTable> table(static_cast<std::size_t>(rows) + 1);
  const Tower& t = cols.empty() ? Tower() : cols[0][0].tower();
  table[0][0] = BiPoly::from_int(t, 1, cols[0][0].vars());
  auto mul = [&](const BiPoly& a, const BiPoly& b) { return trunc < 0 ? a * b : a.mul_truncated(b, trunc); };
  for (int k = 1; k <= rows; ++k) {
    const std::size_t row = static_cast<std::size_t>(row_map[static_cast<std::size_t>(k - 1)]);
    for (const auto& [mask, sub] : table[static_cast<std::size_t>(k - 1)]) {
      // extend `mask` by any column j above its largest element
      std::size_t start = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (mask & (std::uint64_t{1} << j)) start = j + 1;
      (void)sub;
      for (std::size_t j = start; j < n; ++j) {
        std::uint64_t full = mask | (std::uint64_t{1} << j);
        // det(rows [0,k), columns full) by expansion along row k-1
        BiPoly acc(t, cols[0][0].vars());
        int pos = 0;
        for (std::size_t c = 0; c < n; ++c) {
          if (!(full & (std::uint64_t{1} << c))) continue;
          const BiPoly& entry = cols[c][row];
          if (!entry.is_zero()) {
            const BiPoly& minor = table[static_cast<std::size_t>(k - 1)].at(full & ~(std::uint64_t{1} << c));
            BiPoly term = mul(entry, minor);
            if ((k - 1 + pos) % 2 == 0)
              acc += term;
            else
              acc -= term;
          }
          ++pos;
        }
        table[static_cast<std::size_t>(k)][full] = std::move(acc);
      }
    }
  }
  return table;
}

BiPoly det_impl(const std::vector<Column>& square, int trunc) {
  const int r = static_cast<int>(square.size());
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "empty determinant");
  std::vector<int> rows(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) rows[static_cast<std::size_t>(i)] = i;
  auto table = minor_tables(square, r, trunc, rows);
  return table[static_cast<std::size_t>(r)].at((std::uint64_t{1} << r) - 1);
}

std::vector<Column> adjugate_impl(const std::vector<Column>& c, int trunc) {
  const int r = static_cast<int>(c.size());
  const Tower& t = c[0][0].tower();
  const auto vars = c[0][0].vars();
  std::vector<Column> adj(static_cast<std::size_t>(r), Column(static_cast<std::size_t>(r), BiPoly(t, vars)));
  if (r == 1) {
    adj[0][0] = BiPoly::from_int(t, 1, vars);
    return adj;
  }
  // adj_{ij} = (-1)^{i+j} det(C without row j and column i); stored as adj[j][i]
  for (int j = 0; j < r; ++j) {
    std::vector<int> rows;
    for (int i = 0; i < r; ++i)
      if (i != j) rows.push_back(i);
    auto table = minor_tables(c, r - 1, trunc, rows);
    const std::uint64_t all = (std::uint64_t{1} << r) - 1;
    for (int i = 0; i < r; ++i) {
      BiPoly m = table[static_cast<std::size_t>(r - 1)].at(all & ~(std::uint64_t{1} << i));
      adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = (i + j) % 2 == 0 ? m : -m;
    }
  }
  return adj;
}

std::vector<Column> truncate_columns(const std::vector<Column>& cols, int level) {
  std::vector<Column> out;
  for (const auto& c : cols) {
    Column t;
    for (const auto& f : c) t.push_back(f.truncated(level));
    out.push_back(std::move(t));
  }
  return out;
}

// Finite-colength search: fills colength, stable level and the truncation space.
void compute_colength(const TFModule& m, const Config& cfg) {
  auto& cache = m.cache();
  const int r = m.rank();
  int level = 3;
  for (;;) {
    auto space = std::make_shared<TruncationSpace>(m.ring().field, r, level);
    space->add_module(m.columns());
    for (int k = 0; k < level; ++k) {
      if (space->colength_at(k) == space->colength_at(k + 1)) {
        cache.colength = space->colength_at(k);
        cache.stable_level = k;
        cache.space = space;
        return;
      }
    }
    if (level >= static_cast<int>(cfg.truncation_ceiling))
      throw Error(ErrorCode::CapExceeded, "colength did not stabilize below truncation level " +
                                              std::to_string(cfg.truncation_ceiling));
    level = std::min(static_cast<int>(cfg.truncation_ceiling), level + level / 2 + 2);
  }
}

// Indices of a minimal generating subset of a finite-colength module, with the
// chosen columns truncated where that is harmless.
std::pair<std::vector<std::size_t>, std::vector<Column>> minimal_subset_finite(const TFModule& m, const Config& cfg) {
  const int k = stable_level(m, cfg);
  const int level = k + 1;
  TruncationSpace space(m.ring().field, m.rank(), level);
  space.add_module(m.columns(), 1);
  std::vector<std::size_t> idx;
  std::vector<Column> cols;
  for (std::size_t j = 0; j < m.column_count(); ++j) {
    if (space.add_vector(m.columns()[j])) {
      idx.push_back(j);
      Column c;
      for (const auto& f : m.columns()[j]) c.push_back(f.truncated(level));
      cols.push_back(std::move(c));
    }
  }
  return {idx, cols};
}

std::vector<BiPoly> nonzero_minors(const TFModule& m, const Config& cfg) {
  std::vector<BiPoly> out;
  for (auto& [s, f] : maximal_minors(m, cfg))
    if (!f.is_zero()) out.push_back(f);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// TFModule

TFModule::TFModule(LocalRing ring, int rank, std::vector<Column> columns)
    : ring_(std::move(ring)), rank_(rank), cols_(std::move(columns)) {
  if (rank_ < 0) throw Error(ErrorCode::InvalidArgument, "negative rank");
  for (auto& c : cols_) {
    if (static_cast<int>(c.size()) != rank_)
      throw Error(ErrorCode::InvalidArgument, "column has " + std::to_string(c.size()) + " entries, rank is " +
                                                  std::to_string(rank_));
    for (auto& f : c) {
      if (!f.tower()) f = BiPoly(ring_.field, ring_.vars);
      if (!f.tower()->embeds_into(*ring_.field))
        throw Error(ErrorCode::TowerMismatch, "entry over " + f.tower()->describe() + " in a ring over " +
                                                  ring_.field->describe());
      f = f.embed(ring_.field).with_vars(ring_.vars);
    }
  }
  if (rank_ > 0 && !cols_.empty() && !generically_full_rank(ring_.field, rank_, cols_)) {
    bool ok = false;
    if (binomial(cols_.size(), static_cast<std::size_t>(rank_)) <= default_config().witness_subset_cap) {
      for (auto& [s, f] : maximal_minors(*this)) ok = ok || !f.is_zero();
    } else {
      for (long long t0 = 0; t0 < 8 && !ok; ++t0)
        ok = min_minor_valuation_along(*this, FieldElement::from_int(ring_.field, 1),
                                       FieldElement::from_int(ring_.field, t0))
                 .valuation != kInfinity;
    }
    if (!ok) throw Error(ErrorCode::RankDeficient, "generator matrix does not have rank " + std::to_string(rank_));
  }
}

int TFModule::max_degree() const {
  int d = 0;
  for (const auto& c : cols_)
    for (const auto& f : c) d = std::max(d, f.total_degree());
  return d;
}

TFModule TFModule::with_finite_hint() const {
  TFModule m = *this;
  m.cache_ = std::make_shared<Cache>();
  m.cache_->finite = true;
  return m;
}

std::string TFModule::to_string() const {
  std::ostringstream os;
  os << "rank " << rank_ << " [";
  for (std::size_t j = 0; j < cols_.size(); ++j) {
    if (j) os << ", ";
    os << "(";
    for (std::size_t i = 0; i < cols_[j].size(); ++i) os << (i ? ", " : "") << cols_[j][i].to_string();
    os << ")";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// constructors

Column zero_column(const LocalRing& ring, int rank) { return Column(static_cast<std::size_t>(rank), ring.zero()); }

TFModule ideal(const LocalRing& ring, const std::vector<BiPoly>& gens) {
  std::vector<Column> cols;
  for (const auto& g : gens) cols.push_back({g});
  return TFModule(ring, 1, std::move(cols));
}

TFModule ideal(const LocalRing& ring, const std::vector<std::string>& gens) {
  std::vector<BiPoly> g;
  for (const auto& s : gens) g.push_back(ring.parse(s));
  return ideal(ring, g);
}

TFModule maximal_power(const LocalRing& ring, int n) { return maximal_power_module(ring, 1, n); }

TFModule maximal_power_module(const LocalRing& ring, int rank, int n) {
  std::vector<Column> cols;
  FieldElement one = FieldElement::from_int(ring.field, 1);
  for (int c = 0; c < rank; ++c)
    for (int i = n; i >= 0; --i) {
      Column col = zero_column(ring, rank);
      col[static_cast<std::size_t>(c)] = BiPoly::monomial(one, i, n - i, ring.vars);
      cols.push_back(std::move(col));
    }
  return TFModule(ring, rank, std::move(cols)).with_finite_hint();
}

TFModule free_module(const LocalRing& ring, int rank) { return maximal_power_module(ring, rank, 0); }

TFModule direct_sum(const TFModule& a, const TFModule& b) {
  const int r = a.rank() + b.rank();
  std::vector<Column> cols;
  for (const auto& c : a.columns()) {
    Column col = zero_column(a.ring(), r);
    for (int i = 0; i < a.rank(); ++i) col[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    cols.push_back(std::move(col));
  }
  for (const auto& c : b.columns()) {
    Column col = zero_column(a.ring(), r);
    for (int i = 0; i < b.rank(); ++i) col[static_cast<std::size_t>(a.rank() + i)] = c[static_cast<std::size_t>(i)];
    cols.push_back(std::move(col));
  }
  return TFModule(a.ring(), r, std::move(cols));
}

TFModule ideal_product(const TFModule& a, const TFModule& b) {
  if (a.rank() != 1 || b.rank() != 1) throw Error(ErrorCode::InvalidArgument, "ideal product needs rank one inputs");
  std::vector<BiPoly> g;
  for (const auto& x : a.columns())
    for (const auto& y : b.columns()) g.push_back(x[0] * y[0]);
  return ideal(a.ring(), g);
}

TFModule module_sum(const TFModule& a, const TFModule& b) {
  if (a.rank() != b.rank()) throw Error(ErrorCode::InvalidArgument, "module sum needs a common ambient");
  std::vector<Column> cols = a.columns();
  cols.insert(cols.end(), b.columns().begin(), b.columns().end());
  return TFModule(a.ring(), a.rank(), std::move(cols));
}

std::vector<Column> substitute_columns(const std::vector<Column>& cols, const BiPoly& x, const BiPoly& y) {
  std::vector<Column> out;
  for (const auto& c : cols) {
    Column n;
    for (const auto& f : c) n.push_back(f.substitute(x, y));
    out.push_back(std::move(n));
  }
  return out;
}

Column combine_columns(const std::vector<Column>& cols, const std::vector<FieldElement>& coeffs, int rank) {
  Column out;
  for (int i = 0; i < rank; ++i) {
    BiPoly acc;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (coeffs[j].is_zero()) continue;
      BiPoly term = cols[j][static_cast<std::size_t>(i)] * coeffs[j];
      acc = acc.tower() ? acc + term : term;
    }
    if (!acc.tower()) acc = BiPoly(cols[0][0].tower(), cols[0][0].vars());
    out.push_back(std::move(acc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// minors

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (unsigned __int128)1 << 62) return std::size_t{1} << 62;
  }
  return static_cast<std::size_t>(r);
}

std::vector<std::pair<std::vector<std::size_t>, BiPoly>> maximal_minors(const TFModule& m, const Config& cfg) {
  const int r = m.rank();
  const std::size_t n = m.column_count();
  if (r == 0) return {};
  if (n > 62 || binomial(n, static_cast<std::size_t>(r)) > cfg.witness_subset_cap)
    throw Error(ErrorCode::CapExceeded, "number of maximal minors exceeds the configured subset cap");
  std::vector<std::pair<std::vector<std::size_t>, BiPoly>> out;
  if (n < static_cast<std::size_t>(r)) return out;
  std::vector<int> rows(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) rows[static_cast<std::size_t>(i)] = i;
  auto table = minor_tables(m.columns(), r, -1, rows);
  for (auto& [mask, f] : table[static_cast<std::size_t>(r)]) {
    std::vector<std::size_t> s;
    for (std::size_t j = 0; j < n; ++j)
      if (mask & (std::uint64_t{1} << j)) s.push_back(j);
    out.push_back({s, f});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

BiPoly determinant(const std::vector<Column>& square) { return det_impl(square, -1); }
BiPoly determinant_truncated(const std::vector<Column>& square, int k) { return det_impl(square, k); }
std::vector<Column> adjugate(const std::vector<Column>& square) { return adjugate_impl(square, -1); }
std::vector<Column> adjugate_truncated(const std::vector<Column>& square, int k) {
  return adjugate_impl(truncate_columns(square, k), k);
}

TFModule minors_ideal(const TFModule& m, const Config& cfg) {
  if (m.rank() < 1) throw Error(ErrorCode::InvalidArgument, "minors ideal needs rank >= 1");
  std::vector<BiPoly> g = nonzero_minors(m, cfg);
  if (g.empty()) throw Error(ErrorCode::ZeroModule, "all maximal minors vanish");
  return ideal(m.ring(), g);
}

namespace {

template <class Ops>
LineValuation line_valuation_impl(const Ops& ops, const TFModule& m, const FieldElement& alpha,
                                  const FieldElement& beta) {
  using V = typename Ops::value_type;
  using Series = std::vector<V>;
  const int r = m.rank();
  const std::size_t n = m.column_count();
  const Tower& t = m.ring().field;
  int maxdeg = 0;
  for (const auto& c : m.columns())
    for (const auto& f : c) maxdeg = std::max(maxdeg, f.total_degree());
  const int bound = r * std::max(maxdeg, 0) + 1;

  std::vector<V> apow{ops.one()}, bpow{ops.one()};
  const V av = to_value(ops, alpha.embed(t)), bv = to_value(ops, beta.embed(t));
  auto restrict = [&](const BiPoly& f, int prec) {
    Series s(static_cast<std::size_t>(prec), ops.zero());
    for (const auto& [e, c] : f.terms()) {
      const int d = e.first + e.second;
      if (d >= prec) continue;
      while (static_cast<int>(apow.size()) <= e.first) apow.push_back(ops.mul(apow.back(), av));
      while (static_cast<int>(bpow.size()) <= e.second) bpow.push_back(ops.mul(bpow.back(), bv));
      V term = ops.mul(to_value(ops, c), ops.mul(apow[static_cast<std::size_t>(e.first)],
                                                  bpow[static_cast<std::size_t>(e.second)]));
      s[static_cast<std::size_t>(d)] = ops.add(s[static_cast<std::size_t>(d)], term);
    }
    return s;
  };
  auto val = [&](const Series& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!ops.is_zero(s[i])) return static_cast<int>(i);
    return kInfinity;
  };

  for (int prec = 16;; prec *= 2) {
    std::vector<std::vector<Series>> a(static_cast<std::size_t>(r), std::vector<Series>(n));
    for (int i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][j] = restrict(m.entry(i, j), prec);
    std::vector<bool> row_used(static_cast<std::size_t>(r), false), col_used(n, false);
    LineValuation out;
    out.valuation = 0;
    bool exhausted = false;
    for (int step = 0; step < r; ++step) {
      int best = kInfinity;
      std::size_t bi = 0, bj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (col_used[j]) continue;
        for (int i = 0; i < r; ++i) {
          if (row_used[static_cast<std::size_t>(i)]) continue;
          int v = val(a[static_cast<std::size_t>(i)][j]);
          if (v < best) {
            best = v;
            bi = static_cast<std::size_t>(i);
            bj = j;
          }
        }
      }
      if (best == kInfinity) {
        exhausted = true;
        break;
      }
      const int v = best;
      const std::size_t lp = static_cast<std::size_t>(prec - v);
      // inverse of the unit part of the pivot modulo s^(prec - v)
      const Series& piv = a[bi][bj];
      Series inv(lp, ops.zero());
      const V u0 = ops.inv(piv[static_cast<std::size_t>(v)]);
      inv[0] = u0;
      for (std::size_t k = 1; k < lp; ++k) {
        V acc = ops.zero();
        for (std::size_t l = 1; l <= k; ++l)
          if (!ops.is_zero(piv[static_cast<std::size_t>(v) + l]))
            acc = ops.add(acc, ops.mul(piv[static_cast<std::size_t>(v) + l], inv[k - l]));
        inv[k] = ops.neg(ops.mul(u0, acc));
      }
      for (int i = 0; i < r; ++i) {
        const std::size_t ii = static_cast<std::size_t>(i);
        if (row_used[ii] || ii == bi) continue;
        const Series& akj = a[ii][bj];
        if (val(akj) == kInfinity) continue;
        Series q(lp, ops.zero());
        for (std::size_t k = 0; k < lp; ++k) {
          V acc = ops.zero();
          for (std::size_t l = 0; l <= k; ++l)
            if (!ops.is_zero(akj[static_cast<std::size_t>(v) + l])) acc = ops.add(acc, ops.mul(akj[static_cast<std::size_t>(v) + l], inv[k - l]));
          q[k] = acc;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (col_used[j] || j == bj) continue;
          const Series& ail = a[bi][j];
          Series& target = a[ii][j];
          for (std::size_t k = 0; k < lp; ++k) {
            if (ops.is_zero(q[k])) continue;
            for (std::size_t l = 0; k + l < static_cast<std::size_t>(prec); ++l)
              if (!ops.is_zero(ail[l])) target[k + l] = ops.sub(target[k + l], ops.mul(q[k], ail[l]));
          }
        }
        a[ii][bj].assign(static_cast<std::size_t>(prec), ops.zero());
      }
      row_used[bi] = true;
      col_used[bj] = true;
      out.valuation += v;
      out.columns.push_back(bj);
    }
    if (!exhausted) {
      std::sort(out.columns.begin(), out.columns.end());
      return out;
    }
    if (prec > bound) return LineValuation{};
  }
}

}  // namespace

LineValuation min_minor_valuation_along(const TFModule& m, const FieldElement& alpha, const FieldElement& beta) {
  if (m.rank() == 0) return LineValuation{0, {}};
  if (m.column_count() < static_cast<std::size_t>(m.rank())) return LineValuation{};
  return with_ops(m.ring().field, [&](auto ops) { return line_valuation_impl(ops, m, alpha, beta); });
}

int order(const TFModule& m, const Config& cfg) {
  auto& cache = m.cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.order) return *cache.order;
  }
  int best = kInfinity;
  if (m.rank() == 0) {
    best = 0;
  } else if (m.column_count() <= 62 &&
             binomial(m.column_count(), static_cast<std::size_t>(m.rank())) <=
                 std::min(cfg.witness_subset_cap, cfg.minor_scan_limit)) {
    for (const auto& f : nonzero_minors(m, cfg)) best = std::min(best, f.ord());
  } else {
    // Along y = t0 x the valuation of a minor exceeds its order only when t0 is
    // a root of its leading form; best + 1 distinct slopes settle the minimum.
    const Tower& t = m.ring().field;
    const FieldElement one = FieldElement::from_int(t, 1);
    long long tried = 0;
    for (long long t0 = 0; tried <= static_cast<long long>(best == kInfinity ? 0 : best) || best == kInfinity; ++t0) {
      if (t->kind() == BaseKind::Prime && t->degree() == 1 && static_cast<std::uint64_t>(t0) >= t->modulus())
        throw Error(ErrorCode::NotSupported, "field too small to certify the order by specialization");
      int v = min_minor_valuation_along(m, one, FieldElement::from_int(t, t0)).valuation;
      best = std::min(best, v);
      ++tried;
      if (best == kInfinity && tried > 8) break;
    }
  }
  if (best == kInfinity) throw Error(ErrorCode::ZeroModule, "all maximal minors vanish");
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.order = best;
  return best;
}

// ---------------------------------------------------------------------------
// lengths

bool is_unit(const BiPoly& f) { return !f.constant_term().is_zero(); }

bool has_finite_colength(const TFModule& m, const Config& cfg) {
  auto& cache = m.cache();
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    if (cache.finite) return *cache.finite;
  }
  bool finite = false;
  const int r = m.rank();
  if (r == 0) {
    finite = true;
  } else if (m.column_count() >= static_cast<std::size_t>(r)) {
    BiPoly g;
    bool any = false;
    for (const auto& f : nonzero_minors(m, cfg)) {
      g = any ? gcd(g, f) : f;
      any = true;
      if (is_unit(g)) break;
    }
    if (!any) throw Error(ErrorCode::RankDeficient, "all maximal minors vanish");
    finite = is_unit(g);
  }
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.finite = finite;
  return finite;
}

int colength(const TFModule& m, const Config& cfg) {
  if (!has_finite_colength(m, cfg)) return kInfinity;
  auto& cache = m.cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  if (!cache.colength) compute_colength(m, cfg);
  return *cache.colength;
}

int stable_level(const TFModule& m, const Config& cfg) {
  if (colength(m, cfg) == kInfinity) throw Error(ErrorCode::NotFiniteColength, "module has infinite colength");
  std::lock_guard<std::mutex> lock(m.cache().mu);
  return *m.cache().stable_level;
}

bool membership(const Column& f, const TFModule& m, const Config& cfg) {
  if (colength(m, cfg) == kInfinity) throw Error(ErrorCode::NotFiniteColength, "membership needs finite colength");
  if (static_cast<int>(f.size()) != m.rank()) throw Error(ErrorCode::InvalidArgument, "vector has the wrong length");
  std::shared_ptr<const TruncationSpace> space;
  {
    std::lock_guard<std::mutex> lock(m.cache().mu);
    space = m.cache().space;
  }
  return space->contains(f);
}

bool contains(const TFModule& m, const TFModule& n, const Config& cfg) {
  for (const auto& c : n.columns())
    if (!membership(c, m, cfg)) return false;
  return true;
}

bool modules_equal(const TFModule& a, const TFModule& b, const Config& cfg) {
  if (a.rank() != b.rank()) return false;
  return contains(a, b, cfg) && contains(b, a, cfg);
}

// ---------------------------------------------------------------------------
// module operations

TFModule saturate(const TFModule& m, const Config& cfg) {
  const int r = m.rank();
  if (r == 0) return m;
  if (m.column_count() < static_cast<std::size_t>(r))
    throw Error(ErrorCode::RankDeficient, "fewer generators than the rank");
  if (has_finite_colength(m, cfg)) return free_module(m.ring(), r);
  if (r == 1) {
    BiPoly g;
    bool any = false;
    for (const auto& c : m.columns()) {
      if (c[0].is_zero()) continue;
      g = any ? gcd(g, c[0]) : c[0];
      any = true;
    }
    return ideal(m.ring(), std::vector<BiPoly>{g});
  }
  if (is_free(m, cfg)) return m;
  throw Error(ErrorCode::NotSupported, "double dual of a non-free module of rank >= 2 with infinite colength");
}

TFModule double_dual_presentation(const TFModule& m, const Config& cfg) {
  if (has_finite_colength(m, cfg)) return m;
  if (is_free(m, cfg)) return free_module(m.ring(), m.rank());
  if (m.rank() != 1)
    throw Error(ErrorCode::NotSupported, "non-free module of rank >= 2 with infinite colength in its ambient");
  const BiPoly g = saturate(m, cfg).columns()[0][0];
  std::vector<BiPoly> q;
  for (const auto& c : m.columns())
    if (!c[0].is_zero()) q.push_back(*divide_exact(c[0], g));
  return ideal(m.ring(), q);
}

TFModule colon_truncated(const TFModule& n, const BiPoly& d, int level, const Config& cfg) {
  if (d.is_zero()) throw Error(ErrorCode::ZeroDivisor, "colon by zero");
  const int r = n.rank();
  const LocalRing& ring = n.ring();
  TruncationSpace space(ring.field, r, level);
  space.add_module(n.columns());
  std::vector<Column> basis, images;
  const FieldElement one = FieldElement::from_int(ring.field, 1);
  for (int deg = 0; deg < level; ++deg)
    for (int b = 0; b <= deg; ++b)
      for (int c = 0; c < r; ++c) {
        Column e = zero_column(ring, r);
        e[static_cast<std::size_t>(c)] = BiPoly::monomial(one, deg - b, b, ring.vars);
        Column img = zero_column(ring, r);
        img[static_cast<std::size_t>(c)] = d.mul_truncated(e[static_cast<std::size_t>(c)], level);
        basis.push_back(std::move(e));
        images.push_back(std::move(img));
      }
  std::vector<Column> gens;
  for (const auto& coeffs : space.kernel_of(images)) gens.push_back(combine_columns(basis, coeffs, r));
  const TFModule power = maximal_power_module(ring, r, level);
  for (const auto& c : power.columns()) gens.push_back(c);
  TFModule out = TFModule(ring, r, std::move(gens)).with_finite_hint();
  return minimal_generators(out, cfg);
}

TFModule colon_by_element(const TFModule& n, const BiPoly& d, const Config& cfg) {
  if (d.is_zero()) throw Error(ErrorCode::ZeroDivisor, "colon by zero");
  if (colength(n, cfg) == kInfinity) throw Error(ErrorCode::NotFiniteColength, "colon needs finite colength");
  const int k = stable_level(n, cfg);
  if (k == 0) return free_module(n.ring(), n.rank());
  return colon_truncated(n, d, k, cfg);
}

TFModule minimal_generators(const TFModule& m, const Config& cfg) {
  const int r = m.rank();
  if (r == 0) return m;
  if (has_finite_colength(m, cfg)) {
    auto [idx, cols] = minimal_subset_finite(m, cfg);
    TFModule out(m.ring(), r, std::move(cols));
    return out.with_finite_hint();
  }
  if (r == 1) {
    TFModule sat = saturate(m, cfg);
    const BiPoly& g = sat.columns()[0][0];
    std::vector<BiPoly> q;
    for (const auto& c : m.columns()) {
      auto d = divide_exact(c[0], g);
      if (!d) engine_assert_failed("gcd does not divide a generator");
      q.push_back(*d);
    }
    TFModule inner = ideal(m.ring(), q).with_finite_hint();
    auto [idx, cols] = minimal_subset_finite(inner, cfg);
    std::vector<BiPoly> out;
    for (const auto& c : cols) out.push_back(c[0] * g);
    return ideal(m.ring(), out);
  }
  if (is_free(m, cfg)) {
    auto minors = maximal_minors(m, cfg);
    BiPoly g;
    bool any = false;
    for (const auto& [s, f] : minors) {
      if (f.is_zero()) continue;
      g = any ? gcd(g, f) : f;
      any = true;
    }
    for (const auto& [s, f] : minors) {
      if (f.is_zero()) continue;
      auto q = divide_exact(f, g);
      if (q && is_unit(*q)) {
        std::vector<Column> cols;
        for (auto j : s) cols.push_back(m.columns()[j]);
        return TFModule(m.ring(), r, std::move(cols));
      }
    }
    engine_assert_failed("free module without a generating minor");
  }
  throw Error(ErrorCode::NotSupported, "minimal generators of a non-free module with infinite colength");
}

int nu(const TFModule& m, const Config& cfg) { return static_cast<int>(minimal_generators(m, cfg).column_count()); }

bool is_free(const TFModule& m, const Config& cfg) {
  if (m.rank() == 0) return true;
  if (has_finite_colength(m, cfg)) return colength(m, cfg) == 0;
  auto minors = nonzero_minors(m, cfg);
  BiPoly g = minors[0];
  for (const auto& f : minors) g = gcd(g, f);
  for (const auto& f : minors) {
    auto q = divide_exact(f, g);
    if (q && is_unit(*q)) return true;
  }
  return false;
}

bool is_contracted(const TFModule& m, const Config& cfg) { return order(m, cfg) == nu(m, cfg) - m.rank(); }

bool is_mprimary(const TFModule& i, const Config& cfg) {
  if (i.rank() != 1) throw Error(ErrorCode::InvalidArgument, "is_mprimary expects an ideal");
  bool any = false;
  for (const auto& c : i.columns()) any = any || !c[0].is_zero();
  if (!any) throw Error(ErrorCode::ZeroModule, "zero ideal");
  for (const auto& c : i.columns())
    if (is_unit(c[0])) return false;
  return has_finite_colength(i, cfg);
}

std::vector<std::vector<int>> sym_basis(int rank, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(rank), 0);
  // degree-lexicographic: e1^n first
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == rank - 1) {
      cur[static_cast<std::size_t>(pos)] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[static_cast<std::size_t>(pos)] = k;
      self(self, pos + 1, left - k);
    }
  };
  if (rank == 0) return {{}};
  rec(rec, 0, n);
  return out;
}

TFModule sym_power(const TFModule& m, int n, const Config& cfg) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "symmetric power exponent must be positive");
  if (static_cast<std::size_t>(n) > cfg.sym_power_cap)
    throw Error(ErrorCode::CapExceeded, "symmetric power above the configured cap");
  const int r = m.rank();
  const bool finite = has_finite_colength(m, cfg);
  TFModule base = finite ? minimal_generators(m, cfg) : m;
  if (n == 1) return base;
  auto basis = sym_basis(r, n);
  std::map<std::vector<int>, std::size_t> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
  const std::size_t R = basis.size();
  const LocalRing& ring = m.ring();
  using Poly = std::map<std::vector<int>, BiPoly>;
  std::vector<Column> cols;
  const auto& g = base.columns();
  auto rec = [&](auto&& self, const Poly& acc, std::size_t start, int depth) -> void {
    if (depth == n) {
      Column col(R, ring.zero());
      for (const auto& [mono, f] : acc) col[pos.at(mono)] = f;
      cols.push_back(std::move(col));
      return;
    }
    for (std::size_t j = start; j < g.size(); ++j) {
      Poly next;
      for (const auto& [mono, f] : acc)
        for (int c = 0; c < r; ++c) {
          const BiPoly& e = g[j][static_cast<std::size_t>(c)];
          if (e.is_zero()) continue;
          auto m2 = mono;
          ++m2[static_cast<std::size_t>(c)];
          auto it = next.find(m2);
          if (it == next.end())
            next.emplace(m2, f * e);
          else
            it->second += f * e;
        }
      self(self, next, j, depth + 1);
    }
  };
  Poly start;
  start.emplace(std::vector<int>(static_cast<std::size_t>(r), 0), ring.one());
  rec(rec, start, 0, 0);
  TFModule out(ring, static_cast<int>(R), std::move(cols));
  return finite ? out.with_finite_hint() : out;
}

}  // namespace icm
