#include <algorithm>

#include "icm/module.hpp"

namespace icm {

namespace {

struct Term {
  int a, b, coord;
  FieldElement c;
};

std::vector<Term> terms_of(const Column& g) {
  std::vector<Term> out;
  for (std::size_t c = 0; c < g.size(); ++c)
    for (const auto& [e, v] : g[c].terms()) out.push_back({e.first, e.second, static_cast<int>(c), v});
  return out;
}

int column_order(const Column& g) {
  int o = kInfinity;
  for (const auto& f : g) o = std::min(o, f.ord());
  return o;
}

}  // namespace

TruncationSpace::TruncationSpace(const Tower& field, int rank, int level)
    : field_(field),
      rank_(rank),
      level_(level),
      ech_(with_ops(field, [&](auto ops) -> decltype(ech_) {
        return Echelon<decltype(ops)>(ops, dimension_at(level, rank));
      })) {}

std::size_t TruncationSpace::index(int a, int b, int coord, int rank) {
  const std::size_t d = static_cast<std::size_t>(a + b);
  return static_cast<std::size_t>(rank) * (d * (d + 1) / 2 + static_cast<std::size_t>(b)) +
         static_cast<std::size_t>(coord);
}

std::size_t TruncationSpace::dimension_at(int level, int rank) {
  const std::size_t k = static_cast<std::size_t>(level);
  return static_cast<std::size_t>(rank) * k * (k + 1) / 2;
}

std::size_t TruncationSpace::dimension() const { return dimension_at(level_, rank_); }

template <class Ops>
std::vector<typename Ops::value_type> TruncationSpace::vectorize(const Ops& ops, const Column& v,
                                                                 std::size_t extra) const {
  std::vector<typename Ops::value_type> out(dimension() + extra, ops.zero());
  for (std::size_t c = 0; c < v.size(); ++c)
    for (const auto& [e, val] : v[c].terms())
      if (e.first + e.second < level_)
        out[index(e.first, e.second, static_cast<int>(c), rank_)] = to_value(ops, val.embed(field_));
  return out;
}

void TruncationSpace::add_module(const std::vector<Column>& gens, int min_multiplier_degree) {
  std::visit(
      [&](auto& ech) {
        const auto& ops = ech.ops();
        using V = typename std::decay_t<decltype(ops)>::value_type;
        for (const auto& g : gens) {
          const int og = column_order(g);
          if (og >= level_) continue;
          std::vector<Term> ts = terms_of(g);
          std::vector<V> vals;
          for (const auto& t : ts) vals.push_back(to_value(ops, t.c.embed(field_)));
          for (int d = min_multiplier_degree; d < level_ - og; ++d) {
            for (int i = d; i >= 0; --i) {
              const int j = d - i;
              std::vector<V> row(dimension(), ops.zero());
              bool any = false;
              for (std::size_t k = 0; k < ts.size(); ++k) {
                const int a = ts[k].a + i, b = ts[k].b + j;
                if (a + b >= level_) continue;
                row[index(a, b, ts[k].coord, rank_)] = vals[k];
                any = true;
              }
              if (any) ech.insert(std::move(row));
            }
          }
        }
      },
      ech_);
}

bool TruncationSpace::add_vector(const Column& v) {
  return std::visit([&](auto& ech) { return ech.insert(vectorize(ech.ops(), v, 0)); }, ech_);
}

bool TruncationSpace::contains(const Column& v) const {
  return std::visit([&](const auto& ech) { return ech.contains(vectorize(ech.ops(), v, 0)); }, ech_);
}

std::size_t TruncationSpace::span_dimension() const {
  return std::visit([](const auto& ech) { return ech.rank(); }, ech_);
}

int TruncationSpace::colength_at(int k) const {
  const std::size_t d = dimension_at(k, rank_);
  const std::size_t piv = std::visit([&](const auto& ech) { return ech.pivots_below(d); }, ech_);
  return static_cast<int>(d - piv);
}

std::vector<std::vector<FieldElement>> TruncationSpace::kernel_of(const std::vector<Column>& images) const {
  return std::visit(
      [&](const auto& ech) {
        using E = std::decay_t<decltype(ech)>;
        const auto& ops = ech.ops();
        const std::size_t dim = dimension();
        const std::size_t n = images.size();
        E aug(ops, dim);
        for (const auto& row : ech.rows()) {
          auto padded = row;
          padded.resize(dim + n, ops.zero());
          aug.insert(std::move(padded), dim);
        }
        std::vector<std::vector<FieldElement>> out;
        for (std::size_t i = 0; i < n; ++i) {
          auto v = vectorize(ops, images[i], n);
          v[dim + i] = ops.one();
          if (aug.reduce(v, dim, true) == E::npos) {
            std::vector<FieldElement> coeffs;
            for (std::size_t k = 0; k < n; ++k) coeffs.push_back(from_value(ops, field_, v[dim + k]));
            out.push_back(std::move(coeffs));
          } else {
            aug.insert(std::move(v), dim);
          }
        }
        return out;
      },
      ech_);
}

}  // namespace icm
