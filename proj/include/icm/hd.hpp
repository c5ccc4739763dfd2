#pragma once

#include <string>
#include <vector>

#include "icm/transform.hpp"

namespace icm {

/// One infinitely near ring T with the saturated transform (MT)** presented
/// in its own free ambient T^r.
struct HDNode {
  LocalRing ring;
  std::size_t degree_over_root = 1;
  std::string point;  // empty at the root
  TFModule local_module;
  TFModule contracted_part;
  int local_term = 0;
  int order = 0;
  int colength = 0;
  std::vector<HDNode> children;
};

struct HDTree {
  HDNode root;
  long long total = 0;
  int direct_colength = 0;
  /// Every child has strictly smaller colength than its parent.
  bool strict_descent = true;

  int depth() const;
  std::size_t node_count() const;
};

/// lambda(F/M) as a weighted sum of local terms over the infinitely near points.
HDTree hd_decompose(const TFModule& m, const Config& cfg = default_config());
/// Same recursion on proper transforms, local terms binom(ord + 1, 2).
HDTree hd_ideal(const TFModule& i, const Config& cfg = default_config());

struct HDReport {
  long long total = 0;
  int direct = 0;
  bool equal = false;
  HDTree tree;
};
HDReport hd_verify(const TFModule& m, const Config& cfg = default_config());

/// Depth-first list of the nodes (root first).
std::vector<const HDNode*> hd_nodes(const HDTree& tree);
std::string to_dot(const HDTree& tree, const std::string& name = "hd");

/// The transform of M at the last step of `t`, expressed in a basis of the
/// (free) transform of P = MV cap F. `n` is ord(M).
TFModule local_transform(const TFModule& m, const TFModule& p, int n, const LocalRing& t,
                         const Config& cfg = default_config());

}  // namespace icm
