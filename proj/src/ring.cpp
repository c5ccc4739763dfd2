#include "icm/ring.hpp"

#include <sstream>

namespace icm {

std::string TransformPoint::describe() const {
  std::ostringstream os;
  os << (chart == Chart::DivideByX ? "u-chart " : "v-chart ") << minimal_poly.to_string() << " (deg "
     << residue_degree << ", u = " << contracting.to_string() << ")";
  return os.str();
}

LocalRing LocalRing::root(const Tower& field, std::array<std::string, 2> vars) {
  LocalRing r;
  r.field = field;
  r.vars = std::move(vars);
  r.root_degree = field->degree();
  return r;
}

std::string LocalRing::path_string() const {
  if (path.empty()) return "R";
  std::ostringstream os;
  os << "R";
  for (const auto& step : path) {
    os << " > [" << step.point.contracting.to_string() << "; " << step.point.minimal_poly.to_string();
    if (step.point.chart == Chart::DivideByY) os << " at infinity";
    os << "]";
  }
  return os.str();
}

}  // namespace icm
