#pragma once

#include <vector>

#include "icm/module.hpp"

namespace icm {

/// r columns of M spanning MV over the order valuation ring V.
struct WitnessColumns {
  std::vector<std::size_t> columns;
  BiPoly determinant;
  int det_order = 0;
};

/// Lexicographically first r-subset with ord(det) = ord(M) when the subsets
/// can be scanned; otherwise the columns of a minimizing line specialization.
WitnessColumns select_witness(const TFModule& m, const Config& cfg = default_config());

/// MV intersected with F.
TFModule v_contraction(const TFModule& m, const Config& cfg = default_config());
/// {f in F0 : adj(C) f in m^n F0} for a square C with ord det C = n.
TFModule witness_closure(const LocalRing& ring, const std::vector<Column>& c, int n,
                         const Config& cfg = default_config());

bool is_contracted_from_V(const TFModule& m, const Config& cfg = default_config());
/// lambda_V(FV/MV), read off the witness determinant.
int v_length(const TFModule& m, const Config& cfg = default_config());

}  // namespace icm
