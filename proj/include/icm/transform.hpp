#pragma once

#include <vector>

#include "icm/module.hpp"
#include "icm/unipoly.hpp"

namespace icm {

/// A line l in m \ m^2: either x + c*y or y.
struct ContractingGenerator {
  BiPoly element;
  bool is_y = false;
  FieldElement c;
};

/// lambda(R/(l, I(M))), read off a line specialization of the minors.
int line_colength(const TFModule& m, const ContractingGenerator& l);
/// Candidate l for position i of the pool: x, y, x+y, x+2y, ...
ContractingGenerator contracting_candidate(const LocalRing& ring, std::size_t i);

/// First candidate l with lambda(R/(l, I(M))) = ord(M).
ContractingGenerator choose_contracting_generator(const TFModule& m, const Config& cfg = default_config());

/// Points of the exceptional line over which I(M) has a nonunit proper
/// transform, in the chart of l, sorted by (chart, minimal polynomial).
std::vector<TransformPoint> exceptional_points(const TFModule& m, const ContractingGenerator& l,
                                               const Config& cfg = default_config());
/// Same, with the points read off an explicit list of generators of I.
std::vector<TransformPoint> exceptional_points_of(const std::vector<BiPoly>& gens, int order, const LocalRing& ring,
                                                  const ContractingGenerator& l, const Config& cfg = default_config());

/// The quadratic transform at `p`, recentred at the origin of new coordinates
/// (same variable names). Non-rational points extend the field tower.
LocalRing make_transform_ring(const LocalRing& ring, const TransformPoint& p, const Config& cfg = default_config());

/// MT: entries substituted through the last step of `t`.
TFModule transform_module(const TFModule& m, const LocalRing& t);
/// Columns substituted through the last step of `t` (no rank check).
std::vector<Column> transform_columns(const std::vector<Column>& cols, const LocalRing& t);
/// The proper transform: x^(-ord I) * I T.
TFModule proper_transform_ideal(const TFModule& i, const LocalRing& t, const Config& cfg = default_config());

}  // namespace icm
