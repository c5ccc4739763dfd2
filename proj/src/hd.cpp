#include "icm/hd.hpp"

#include <functional>
#include <sstream>

#include "icm/valuation.hpp"

namespace icm {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = start; j + (k - cur.size()) <= n; ++j) {
      cur.push_back(j);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

long long weighted_total(const HDNode& node) {
  long long t = static_cast<long long>(node.local_term) * static_cast<long long>(node.degree_over_root);
  for (const auto& c : node.children) t += weighted_total(c);
  return t;
}

int node_depth(const HDNode& node) {
  int d = 0;
  for (const auto& c : node.children) d = std::max(d, node_depth(c));
  return d + 1;
}

struct Builder {
  const Config& cfg;
  bool descent = true;

  HDNode module_node(const TFModule& m, std::size_t degree, std::string point, std::size_t depth) {
    HDNode node;
    node.ring = m.ring();
    node.degree_over_root = degree;
    node.point = std::move(point);
    node.local_module = m;
    node.colength = colength(m, cfg);
    if (node.colength == 0) {
      node.contracted_part = m;
      return node;
    }
    node.order = order(m, cfg);
    TFModule p = v_contraction(m, cfg);
    node.contracted_part = p;
    const int cp = colength(p, cfg);
    node.local_term = cp;
    if (cp == node.colength) return node;
    if (depth >= cfg.max_depth) throw Error(ErrorCode::DepthExceeded, "decomposition deeper than the configured cap");
    ContractingGenerator l = choose_contracting_generator(m, cfg);
    for (const auto& pt : exceptional_points(m, l, cfg)) {
      LocalRing t = make_transform_ring(m.ring(), pt, cfg);
      TFModule child = local_transform(m, p, node.order, t, cfg);
      if (!has_finite_colength(child, cfg)) engine_assert_failed("transform at an exceptional point has infinite colength");
      HDNode c = module_node(minimal_generators(child, cfg), degree * static_cast<std::size_t>(pt.residue_degree),
                             pt.describe(), depth + 1);
      descent = descent && c.colength < node.colength;
      node.children.push_back(std::move(c));
    }
    return node;
  }

  HDNode ideal_node(const TFModule& j, std::size_t degree, std::string point, std::size_t depth) {
    HDNode node;
    node.ring = j.ring();
    node.degree_over_root = degree;
    node.point = std::move(point);
    node.local_module = j;
    node.colength = colength(j, cfg);
    if (node.colength == 0) {
      node.contracted_part = j;
      return node;
    }
    const int n = order(j, cfg);
    node.order = n;
    node.local_term = n * (n + 1) / 2;
    node.contracted_part = maximal_power(j.ring(), n);
    if (node.local_term == node.colength) return node;
    if (depth >= cfg.max_depth) throw Error(ErrorCode::DepthExceeded, "decomposition deeper than the configured cap");
    ContractingGenerator l = choose_contracting_generator(j, cfg);
    std::vector<BiPoly> gens;
    for (const auto& c : j.columns()) gens.push_back(c[0]);
    for (const auto& pt : exceptional_points_of(gens, n, j.ring(), l, cfg)) {
      LocalRing t = make_transform_ring(j.ring(), pt, cfg);
      TFModule child = proper_transform_ideal(j, t, cfg);
      HDNode c = ideal_node(minimal_generators(child, cfg), degree * static_cast<std::size_t>(pt.residue_degree),
                            pt.describe(), depth + 1);
      descent = descent && c.colength < node.colength;
      node.children.push_back(std::move(c));
    }
    return node;
  }
};

void collect(const HDNode& n, std::vector<const HDNode*>& out) {
  out.push_back(&n);
  for (const auto& c : n.children) collect(c, out);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

}  // namespace

int HDTree::depth() const { return node_depth(root); }

std::size_t HDTree::node_count() const {
  std::vector<const HDNode*> v;
  collect(root, v);
  return v.size();
}

TFModule local_transform(const TFModule& m, const TFModule& p, int n, const LocalRing& t, const Config& cfg) {
  const int r = m.rank();
  const std::vector<Column> pt = transform_columns(p.columns(), t);
  const TransformStep& step = t.path.back();
  for (const auto& s : subsets(p.column_count(), static_cast<std::size_t>(r))) {
    std::vector<Column> b;
    for (auto j : s) b.push_back(p.columns()[j]);
    BiPoly d = determinant(b);
    if (d.is_zero() || d.ord() != n) continue;
    BiPoly dt = d.embed(t.field).substitute(step.x_image, step.y_image).with_vars(t.vars).divide_monomial(n, 0);
    if (!is_unit(dt)) continue;
    std::vector<Column> bt;
    for (auto j : s) bt.push_back(pt[j]);
    std::vector<Column> adj = adjugate(bt);
    std::vector<Column> cols;
    TFModule mg = minimal_generators(m, cfg);
    for (const auto& g : transform_columns(mg.columns(), t)) {
      Column c;
      for (int i = 0; i < r; ++i) {
        BiPoly acc = t.zero();
        for (int k = 0; k < r; ++k) acc += adj[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(k)];
        c.push_back(acc.divide_monomial(n, 0));
      }
      cols.push_back(std::move(c));
    }
    return TFModule(t, r, std::move(cols));
  }
  engine_assert_failed("transform of the V-contraction has no basis among its generators");
}

HDTree hd_decompose(const TFModule& m, const Config& cfg) {
  TFModule base = double_dual_presentation(m, cfg);
  Builder b{cfg};
  HDTree tree;
  tree.root = b.module_node(has_finite_colength(base, cfg) ? minimal_generators(base, cfg) : base, 1, "", 0);
  tree.total = weighted_total(tree.root);
  tree.direct_colength = colength(base, cfg);
  tree.strict_descent = b.descent;
  return tree;
}

HDTree hd_ideal(const TFModule& i, const Config& cfg) {
  if (i.rank() != 1) throw Error(ErrorCode::InvalidArgument, "hd_ideal expects an ideal");
  if (!is_mprimary(i, cfg) && colength(i, cfg) != 0)
    throw Error(ErrorCode::NotMPrimary, "hd_ideal expects an m-primary ideal");
  Builder b{cfg};
  HDTree tree;
  tree.root = b.ideal_node(minimal_generators(i, cfg), 1, "", 0);
  tree.total = weighted_total(tree.root);
  tree.direct_colength = colength(i, cfg);
  tree.strict_descent = b.descent;
  return tree;
}

HDReport hd_verify(const TFModule& m, const Config& cfg) {
  HDReport rep;
  rep.tree = hd_decompose(m, cfg);
  rep.total = rep.tree.total;
  rep.direct = colength(double_dual_presentation(m, cfg), cfg);
  rep.equal = rep.total == rep.direct;
  return rep;
}

std::vector<const HDNode*> hd_nodes(const HDTree& tree) {
  std::vector<const HDNode*> out;
  collect(tree.root, out);
  return out;
}

std::string to_dot(const HDTree& tree, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n  node [shape=box];\n";
  int next = 0;
  std::function<int(const HDNode&)> emit = [&](const HDNode& n) {
    const int id = next++;
    os << "  n" << id << " [label=\"" << escape(n.ring.path_string()) << "\\nord " << n.order << ", term "
       << n.local_term << ", [T:R] " << n.degree_over_root << "\"];\n";
    for (const auto& c : n.children) {
      const int cid = emit(c);
      os << "  n" << id << " -> n" << cid << " [label=\"" << escape(c.point) << "\"];\n";
    }
    return id;
  };
  emit(tree.root);
  os << "}\n";
  return os.str();
}

}  // namespace icm
