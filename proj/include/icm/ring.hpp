#pragma once

#include <array>
#include <string>
#include <vector>

#include "icm/bipoly.hpp"

namespace icm {

enum class Chart { DivideByX, DivideByY };

/// A closed point on the exceptional line of the blow-up, described in the
/// recoordinatized frame (u, v) where u is the chosen contracting generator.
/// DivideByX: v = u*t with t a root of `minimal_poly`; DivideByY: the point
/// u/v = 0 at infinity (minimal_poly is then the polynomial t).
struct TransformPoint {
  Chart chart = Chart::DivideByX;
  UniPoly minimal_poly;
  int residue_degree = 1;
  /// The contracting generator as a polynomial in the old coordinates.
  BiPoly contracting;
  /// Frame change: old coordinates expressed through (u, v).
  BiPoly frame_x, frame_y;

  std::string describe() const;
};

struct TransformStep {
  TransformPoint point;
  std::array<std::string, 2> old_vars;
  std::array<std::string, 2> new_vars;
  /// Old coordinates as polynomials in the new ones.
  BiPoly x_image, y_image;
  /// Name of the generator adjoined for a non-rational point (empty otherwise).
  std::string generator;
};

/// k[x, y] localized at (x, y), possibly reached from a root ring through a
/// chain of quadratic transforms.
struct LocalRing {
  Tower field;
  std::array<std::string, 2> vars = {"x", "y"};
  std::vector<TransformStep> path;
  std::size_t root_degree = 1;

  static LocalRing root(const Tower& field, std::array<std::string, 2> vars = {"x", "y"});

  std::size_t residue_degree_over_root() const { return field->degree() / root_degree; }
  BiPoly zero() const { return BiPoly(field, vars); }
  BiPoly one() const { return BiPoly::from_int(field, 1, vars); }
  BiPoly x() const { return BiPoly::variable(field, 0, vars); }
  BiPoly y() const { return BiPoly::variable(field, 1, vars); }
  BiPoly parse(const std::string& text) const { return parse_bipoly(text, field, vars); }
  std::string path_string() const;
};

}  // namespace icm
